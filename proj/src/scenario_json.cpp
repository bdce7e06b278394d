#include "remoteproj/scenario_json.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace remoteproj {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
  }
  for (const std::string& key : required) {
    if (!j.contains(key)) throw std::invalid_argument(where + ": missing key '" + key + "'");
  }
}

Vector vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument(where + ": expected an array of numbers");
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw std::invalid_argument(where + ": expected numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

json set_to_json(const ConvexSet& set) {
  json j;
  j["kind"] = to_string(set.kind);
  switch (set.kind) {
    case SetKind::Hyperplane: j["normal"] = set.normal; break;
    case SetKind::AffineHyperplane:
      j["normal"] = set.normal;
      j["offset"] = set.offset;
      break;
    case SetKind::Halfspace:
      j["normal"] = set.normal;
      j["offset"] = set.offset;
      break;
    case SetKind::Slab:
      j["normal"] = set.normal;
      j["lower"] = set.lower;
      j["upper"] = set.upper;
      break;
    case SetKind::Ball:
      j["center"] = set.center;
      j["radius"] = set.radius;
      break;
    case SetKind::Line: j["direction"] = set.direction; break;
    case SetKind::Subspace: j["basis"] = set.basis; break;
    case SetKind::Box:
      j["lower"] = set.box_lower;
      j["upper"] = set.box_upper;
      break;
  }
  return j;
}

ConvexSet set_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("family entry: expected an object with a 'kind'");
  const SetKind kind = set_kind_from_string(j.at("kind").get<std::string>());
  switch (kind) {
    case SetKind::Hyperplane:
      require_keys(j, {"kind", "normal"}, {"kind", "normal"}, "hyperplane");
      return ConvexSet::hyperplane(vector_from_json(j.at("normal"), "hyperplane normal"));
    case SetKind::AffineHyperplane:
      require_keys(j, {"kind", "normal", "offset"}, {"kind", "normal", "offset"},
                   "affine_hyperplane");
      return ConvexSet::affine_hyperplane(
          vector_from_json(j.at("normal"), "affine hyperplane normal"),
          j.at("offset").get<double>());
    case SetKind::Halfspace:
      require_keys(j, {"kind", "normal", "offset"}, {"kind", "normal", "offset"}, "halfspace");
      return ConvexSet::halfspace(vector_from_json(j.at("normal"), "halfspace normal"),
                                  j.at("offset").get<double>());
    case SetKind::Slab:
      require_keys(j, {"kind", "normal", "lower", "upper"},
                   {"kind", "normal", "lower", "upper"}, "slab");
      return ConvexSet::slab(vector_from_json(j.at("normal"), "slab normal"),
                             j.at("lower").get<double>(), j.at("upper").get<double>());
    case SetKind::Ball:
      require_keys(j, {"kind", "center", "radius"}, {"kind", "center", "radius"}, "ball");
      return ConvexSet::ball(vector_from_json(j.at("center"), "ball center"),
                             j.at("radius").get<double>());
    case SetKind::Line:
      require_keys(j, {"kind", "direction"}, {"kind", "direction"}, "line");
      return ConvexSet::line(vector_from_json(j.at("direction"), "line direction"));
    case SetKind::Subspace: {
      require_keys(j, {"kind", "basis"}, {"kind", "basis"}, "subspace");
      std::vector<Vector> basis;
      for (const auto& row : j.at("basis")) basis.push_back(vector_from_json(row, "subspace basis"));
      return ConvexSet::subspace(std::move(basis));
    }
    case SetKind::Box:
      require_keys(j, {"kind", "lower", "upper"}, {"kind", "lower", "upper"}, "box");
      return ConvexSet::box(vector_from_json(j.at("lower"), "box lower"),
                            vector_from_json(j.at("upper"), "box upper"));
  }
  throw std::logic_error("set_from_json: bad enum");
}

json schedule_to_json(const Schedule& s) {
  json j;
  j["kind"] = to_string(s.kind());
  switch (s.kind()) {
    case ScheduleKind::Constant: j["value"] = s.params()[0]; break;
    case ScheduleKind::Power: j["exponent"] = s.params()[0]; break;
    case ScheduleKind::HarmonicLog: break;
    case ScheduleKind::Explicit: j["values"] = s.params(); break;
    case ScheduleKind::Alternating:
      j["hi"] = s.params()[0];
      j["lo"] = s.params()[1];
      break;
  }
  return j;
}

Schedule schedule_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("schedule: expected an object with a 'kind'");
  switch (schedule_kind_from_string(j.at("kind").get<std::string>())) {
    case ScheduleKind::Constant:
      require_keys(j, {"kind", "value"}, {"kind", "value"}, "schedule");
      return Schedule::constant(j.at("value").get<double>());
    case ScheduleKind::Power:
      require_keys(j, {"kind", "exponent"}, {"kind", "exponent"}, "schedule");
      return Schedule::power(j.at("exponent").get<double>());
    case ScheduleKind::HarmonicLog:
      require_keys(j, {"kind"}, {"kind"}, "schedule");
      return Schedule::harmonic_log();
    case ScheduleKind::Explicit: {
      require_keys(j, {"kind", "values"}, {"kind", "values"}, "schedule");
      return Schedule::explicit_values(
          vector_from_json(j.at("values"), "schedule values"));
    }
    case ScheduleKind::Alternating:
      require_keys(j, {"kind", "hi", "lo"}, {"kind", "hi", "lo"}, "schedule");
      return Schedule::alternating(j.at("hi").get<double>(), j.at("lo").get<double>());
  }
  throw std::logic_error("schedule_from_json: bad enum");
}

json policy_to_json(const SelectionPolicy& p) {
  json j;
  j["kind"] = to_string(p.kind);
  switch (p.kind) {
    case PolicyKind::Remotest:
    case PolicyKind::ThresholdFirst:
    case PolicyKind::Cyclic: break;
    case PolicyKind::Scripted: j["indices"] = p.indices; break;
    case PolicyKind::QuasiPeriodic:
      j["indices"] = p.indices;
      j["window"] = p.window;
      j["family_size"] = p.family_size;
      break;
    case PolicyKind::Random: j["seed"] = p.seed; break;
  }
  return j;
}

std::vector<std::int32_t> indices_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument(where + ": expected an array of indices");
  std::vector<std::int32_t> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw std::invalid_argument(where + ": expected integers");
    out.push_back(e.get<std::int32_t>());
  }
  return out;
}

SelectionPolicy policy_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("policy: expected an object with a 'kind'");
  switch (policy_kind_from_string(j.at("kind").get<std::string>())) {
    case PolicyKind::Remotest:
      require_keys(j, {"kind"}, {"kind"}, "policy");
      return SelectionPolicy::remotest();
    case PolicyKind::ThresholdFirst:
      require_keys(j, {"kind"}, {"kind"}, "policy");
      return SelectionPolicy::threshold_first();
    case PolicyKind::Cyclic:
      require_keys(j, {"kind"}, {"kind"}, "policy");
      return SelectionPolicy::cyclic();
    case PolicyKind::Scripted:
      require_keys(j, {"kind", "indices"}, {"kind", "indices"}, "policy");
      return SelectionPolicy::scripted(indices_from_json(j.at("indices"), "policy indices"));
    case PolicyKind::QuasiPeriodic:
      require_keys(j, {"kind", "indices", "window", "family_size"},
                   {"kind", "indices", "window", "family_size"}, "policy");
      return SelectionPolicy::quasi_periodic(
          indices_from_json(j.at("indices"), "policy indices"),
          j.at("window").get<std::int64_t>(), j.at("family_size").get<std::int64_t>());
    case PolicyKind::Random:
      require_keys(j, {"kind", "seed"}, {"kind", "seed"}, "policy");
      return SelectionPolicy::random(j.at("seed").get<std::uint64_t>());
  }
  throw std::logic_error("policy_from_json: bad enum");
}

json extras_to_json(const ScenarioExtras& e) {
  json j = json::object();
  if (e.reference_point) j["reference_point"] = *e.reference_point;
  if (e.ball) {
    j["ball"] = json{{"center", e.ball->center}, {"radius", e.ball->radius}};
  }
  if (e.window) j["window"] = *e.window;
  if (e.symmetric) j["symmetric"] = *e.symmetric;
  if (e.cap) {
    j["cap"] = json{{"m", e.cap->m},
                    {"pole", e.cap->pole},
                    {"tangent_axis", e.cap->tangent_axis},
                    {"tau", e.cap->tau},
                    {"tau_tail_sq_realized", e.cap->tau_tail_sq_realized},
                    {"tau_tail_sq_bound", e.cap->tau_tail_sq_bound}};
  }
  return j;
}

ScenarioExtras extras_from_json(const json& j) {
  require_keys(j, {"reference_point", "ball", "window", "symmetric", "cap"}, {}, "extras");
  ScenarioExtras e;
  if (j.contains("reference_point"))
    e.reference_point = vector_from_json(j.at("reference_point"), "extras reference_point");
  if (j.contains("ball")) {
    const json& b = j.at("ball");
    require_keys(b, {"center", "radius"}, {"center", "radius"}, "extras ball");
    e.ball = BallExtras{vector_from_json(b.at("center"), "extras ball center"),
                        b.at("radius").get<double>()};
  }
  if (j.contains("window")) e.window = j.at("window").get<std::int64_t>();
  if (j.contains("symmetric")) e.symmetric = j.at("symmetric").get<bool>();
  if (j.contains("cap")) {
    const json& c = j.at("cap");
    require_keys(c,
                 {"m", "pole", "tangent_axis", "tau", "tau_tail_sq_realized",
                  "tau_tail_sq_bound"},
                 {"m", "pole", "tangent_axis", "tau", "tau_tail_sq_realized",
                  "tau_tail_sq_bound"},
                 "extras cap");
    CapExtras cap;
    cap.m = c.at("m").get<std::int64_t>();
    cap.pole = vector_from_json(c.at("pole"), "extras cap pole");
    cap.tangent_axis = vector_from_json(c.at("tangent_axis"), "extras cap tangent_axis");
    cap.tau = vector_from_json(c.at("tau"), "extras cap tau");
    cap.tau_tail_sq_realized = c.at("tau_tail_sq_realized").get<double>();
    cap.tau_tail_sq_bound = c.at("tau_tail_sq_bound").get<double>();
    e.cap = std::move(cap);
  }
  return e;
}

}  // namespace

json scenario_to_json(const ScenarioConfig& config) {
  json j;
  j["name"] = config.name;
  j["family"] = json::array();
  for (const ConvexSet& set : config.family) j["family"].push_back(set_to_json(set));
  j["schedule"] = schedule_to_json(config.schedule);
  j["policy"] = policy_to_json(config.policy);
  j["x0"] = config.x0;
  j["horizon"] = config.horizon;
  if (config.a_ref) j["a_ref"] = *config.a_ref;
  const json extras = extras_to_json(config.extras);
  if (!extras.empty()) j["extras"] = extras;
  return j;
}

ScenarioConfig scenario_from_json(const json& j) {
  require_keys(j, {"name", "family", "schedule", "policy", "x0", "horizon", "a_ref", "extras"},
               {"name", "family", "schedule", "policy", "x0", "horizon"}, "scenario");
  ScenarioConfig config;
  config.name = j.at("name").get<std::string>();
  if (!j.at("family").is_array() || j.at("family").empty())
    throw std::invalid_argument("scenario: family must be a nonempty array");
  for (const auto& entry : j.at("family")) config.family.push_back(set_from_json(entry));
  config.schedule = schedule_from_json(j.at("schedule"));
  config.policy = policy_from_json(j.at("policy"));
  config.x0 = vector_from_json(j.at("x0"), "scenario x0");
  config.horizon = j.at("horizon").get<std::int64_t>();
  if (j.contains("a_ref")) config.a_ref = vector_from_json(j.at("a_ref"), "scenario a_ref");
  if (j.contains("extras")) config.extras = extras_from_json(j.at("extras"));

  const std::size_t dim = config.x0.size();
  for (const ConvexSet& set : config.family) {
    if (set.dim() != dim)
      throw std::invalid_argument("scenario: family dimension differs from x0");
  }
  return config;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  json j;
  in >> j;
  return scenario_from_json(j);
}

void save_scenario_file(const std::filesystem::path& path, const ScenarioConfig& config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << scenario_to_json(config).dump(2) << '\n';
}

}  // namespace remoteproj

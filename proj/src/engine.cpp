#include "remoteproj/engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace remoteproj {

namespace {

constexpr double kTieTol = 1e-12;      // argmax ties within this are equal
constexpr double kWeaknessSlack = 1e-9;
constexpr int kConvergedStreak = 10;

// lowest index within kTieTol of the maximum
std::size_t pick_argmax(const std::vector<double>& values) {
  double mx = values[0];
  for (double v : values) mx = std::max(mx, v);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] >= mx - kTieTol) return k;
  }
  return 0;  // unreachable
}

}  // namespace

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Remotest: return "remotest";
    case PolicyKind::ThresholdFirst: return "threshold_first";
    case PolicyKind::Scripted: return "scripted";
    case PolicyKind::Cyclic: return "cyclic";
    case PolicyKind::QuasiPeriodic: return "quasi_periodic";
    case PolicyKind::Random: return "random";
  }
  throw std::logic_error("to_string(PolicyKind): bad enum");
}

PolicyKind policy_kind_from_string(const std::string& s) {
  if (s == "remotest") return PolicyKind::Remotest;
  if (s == "threshold_first") return PolicyKind::ThresholdFirst;
  if (s == "scripted") return PolicyKind::Scripted;
  if (s == "cyclic") return PolicyKind::Cyclic;
  if (s == "quasi_periodic") return PolicyKind::QuasiPeriodic;
  if (s == "random") return PolicyKind::Random;
  throw std::invalid_argument("unknown policy kind: " + s);
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Converged: return "converged";
    case StopReason::Horizon: return "horizon";
    case StopReason::InIntersection: return "in_intersection";
  }
  throw std::logic_error("to_string(StopReason): bad enum");
}

SelectionPolicy SelectionPolicy::remotest() { return SelectionPolicy{}; }

SelectionPolicy SelectionPolicy::threshold_first() {
  SelectionPolicy p;
  p.kind = PolicyKind::ThresholdFirst;
  return p;
}

SelectionPolicy SelectionPolicy::scripted(std::vector<std::int32_t> indices) {
  SelectionPolicy p;
  p.kind = PolicyKind::Scripted;
  for (std::int32_t i : indices) {
    if (i < 0) throw std::invalid_argument("scripted policy: negative index");
  }
  p.indices = std::move(indices);
  return p;
}

SelectionPolicy SelectionPolicy::cyclic() {
  SelectionPolicy p;
  p.kind = PolicyKind::Cyclic;
  return p;
}

SelectionPolicy SelectionPolicy::quasi_periodic(std::vector<std::int32_t> indices,
                                                std::int64_t window,
                                                std::int64_t family_size) {
  if (family_size < 1) throw std::invalid_argument("quasi-periodic policy: family size must be positive");
  if (window < family_size)
    throw std::invalid_argument("quasi-periodic policy: window shorter than family size");
  if ((std::int64_t)indices.size() < window)
    throw std::invalid_argument("quasi-periodic policy: index list shorter than one window");
  for (std::int32_t i : indices) {
    if (i < 0 || i >= family_size)
      throw std::invalid_argument("quasi-periodic policy: index out of range");
  }
  // every window of length M must contain all indices 0..K-1
  std::vector<std::int64_t> last_seen((std::size_t)family_size, -1);
  for (std::int64_t pos = 0; pos < (std::int64_t)indices.size(); ++pos) {
    last_seen[(std::size_t)indices[(std::size_t)pos]] = pos;
    if (pos >= window - 1) {
      for (std::int64_t k = 0; k < family_size; ++k) {
        if (last_seen[(std::size_t)k] <= pos - window)
          throw std::invalid_argument(
              "quasi-periodic policy: window at position " + std::to_string(pos - window + 1) +
              " misses index " + std::to_string(k));
      }
    }
  }
  SelectionPolicy p;
  p.kind = PolicyKind::QuasiPeriodic;
  p.indices = std::move(indices);
  p.window = window;
  p.family_size = family_size;
  return p;
}

SelectionPolicy SelectionPolicy::random(std::uint64_t seed) {
  SelectionPolicy p;
  p.kind = PolicyKind::Random;
  p.seed = seed;
  return p;
}

std::size_t Trace::weakness_flag_count() const {
  std::size_t count = 0;
  for (const StepRecord& s : steps) count += s.weakness_flag ? 1 : 0;
  return count;
}

const Vector* Trace::iterate_at(std::int64_t n) const {
  auto it = std::lower_bound(iterate_steps.begin(), iterate_steps.end(), n);
  if (it == iterate_steps.end() || *it != n) return nullptr;
  return &iterates[(std::size_t)(it - iterate_steps.begin())];
}

namespace {

struct Selector {
  const SelectionPolicy& policy;
  std::mt19937_64 rng;
  std::uniform_int_distribution<std::int64_t> pick;

  Selector(const SelectionPolicy& p, std::size_t family_size)
      : policy(p), rng(p.seed), pick(0, (std::int64_t)family_size - 1) {}

  // distances are the current per-set distances; returns the family index
  std::size_t choose(std::int64_t n, const std::vector<double>& distances,
                     double dist_max, double t_required) {
    switch (policy.kind) {
      case PolicyKind::Remotest: return pick_argmax(distances);
      case PolicyKind::ThresholdFirst: {
        const double threshold = t_required * dist_max - kWeaknessSlack;
        for (std::size_t k = 0; k < distances.size(); ++k) {
          if (distances[k] >= threshold) return k;
        }
        return pick_argmax(distances);  // unreachable: the argmax qualifies
      }
      case PolicyKind::Scripted:
      case PolicyKind::QuasiPeriodic: {
        if ((std::size_t)n >= policy.indices.size())
          throw std::invalid_argument("scripted policy: step " + std::to_string(n) +
                                      " beyond the index list");
        const std::int32_t idx = policy.indices[(std::size_t)n];
        if ((std::size_t)idx >= distances.size())
          throw std::invalid_argument("scripted policy: index out of range");
        return (std::size_t)idx;
      }
      case PolicyKind::Cyclic: return (std::size_t)(n % (std::int64_t)distances.size());
      case PolicyKind::Random: return (std::size_t)pick(rng);
    }
    throw std::logic_error("Selector::choose: bad enum");
  }

  bool dictated() const {
    return policy.kind == PolicyKind::Scripted || policy.kind == PolicyKind::Cyclic ||
           policy.kind == PolicyKind::QuasiPeriodic || policy.kind == PolicyKind::Random;
  }
};

std::int64_t effective_stride(const RunOptions& options, std::size_t dim) {
  if (options.stride > 0) return options.stride;
  return dim < 64 ? 1 : 10;
}

}  // namespace

Trace run_remote(const std::vector<ConvexSet>& family, const Schedule& schedule,
                 const Vector& x0, const SelectionPolicy& policy,
                 const RunOptions& options) {
  if (family.empty()) throw std::invalid_argument("run_remote: empty family");
  if (!is_finite(x0)) throw std::invalid_argument("run_remote: non-finite start");
  if (options.horizon < 1) throw std::invalid_argument("run_remote: horizon must be positive");
  const std::size_t dim = x0.size();
  for (const ConvexSet& set : family) {
    if (set.dim() != dim) throw std::invalid_argument("run_remote: family dimension mismatch");
  }
  if (options.a_ref && options.a_ref->size() != dim)
    throw std::invalid_argument("run_remote: reference point dimension mismatch");

  Trace trace;
  trace.x0 = x0;
  trace.a_ref = options.a_ref;
  trace.family = family;
  trace.tol = options.tol;
  trace.retention_stride = effective_stride(options, dim);

  const Vector origin(dim, 0.0);
  const Vector& ref = options.a_ref ? *options.a_ref : origin;

  Selector selector(policy, family.size());
  const bool dictated = selector.dictated();

  Vector x = x0;
  std::vector<double> distances(family.size());
  int small_step_streak = 0;
  trace.stop_reason = StopReason::Horizon;

  trace.iterate_steps.push_back(0);
  trace.iterates.push_back(x);

  for (std::int64_t n = 0; n < options.horizon; ++n) {
    double dist_max = 0.0;
    for (std::size_t k = 0; k < family.size(); ++k) {
      distances[k] = distance(family[k], x);
      dist_max = std::max(dist_max, distances[k]);
    }
    if (dist_max <= options.tol) {
      trace.stop_reason = StopReason::InIntersection;
      break;
    }

    const double t_required = schedule.at(n);
    const std::size_t alpha = selector.choose(n, distances, dist_max, t_required);
    const Vector x_next = project(family[alpha], x);
    if (!is_finite(x_next)) throw std::runtime_error("run_remote: non-finite iterate at step " + std::to_string(n));

    const Vector y = sub(x, x_next);
    const double step_norm = norm(y);
    const double x_norm = dist(x_next, ref);

    StepRecord rec;
    rec.n = n;
    rec.alpha = (std::int32_t)alpha;
    rec.dist_chosen = distances[alpha];
    rec.dist_max = dist_max;
    rec.t_required = t_required;
    rec.t_effective = dist_max > 0.0 ? rec.dist_chosen / dist_max : 1.0;
    rec.step_norm = step_norm;
    rec.x_norm = x_norm;
    if (step_norm > 0.0 && x_norm > 0.0) {
      const double ratio = (inner(y, sub(x_next, ref))) / (step_norm * x_norm);
      rec.sin_eps = std::clamp(ratio, 0.0, 1.0);
    }
    if (dictated) rec.weakness_flag = rec.dist_chosen < t_required * dist_max - kWeaknessSlack;
    trace.steps.push_back(rec);

    x = x_next;
    if ((n + 1) % trace.retention_stride == 0) {
      trace.iterate_steps.push_back(n + 1);
      trace.iterates.push_back(x);
    }

    small_step_streak = step_norm <= options.tol ? small_step_streak + 1 : 0;
    if (small_step_streak >= kConvergedStreak) {
      trace.stop_reason = StopReason::Converged;
      break;
    }
  }

  if (trace.stop_reason == StopReason::Horizon) {
    double dist_max = 0.0;
    for (const ConvexSet& set : family) dist_max = std::max(dist_max, distance(set, x));
    if (dist_max <= options.tol) trace.stop_reason = StopReason::InIntersection;
  }

  const std::int64_t last_step = trace.steps.empty() ? 0 : trace.steps.back().n + 1;
  if (trace.iterate_steps.back() != last_step) {
    trace.iterate_steps.push_back(last_step);
    trace.iterates.push_back(x);
  }
  trace.final_point = std::move(x);
  return trace;
}

Trace run_wga(const std::vector<Vector>& dictionary, const Schedule& schedule,
              const Vector& x0, const RunOptions& options,
              const SelectionPolicy& policy) {
  // Deliberately not a call into run_remote: this loop works with the
  // dictionary inner products directly, so the two routes can be checked
  // against each other.
  if (dictionary.empty()) throw std::invalid_argument("run_wga: empty dictionary");
  if (!is_finite(x0)) throw std::invalid_argument("run_wga: non-finite start");
  if (options.horizon < 1) throw std::invalid_argument("run_wga: horizon must be positive");
  const std::size_t dim = x0.size();

  std::vector<Vector> dict;
  dict.reserve(dictionary.size());
  for (const Vector& g : dictionary) {
    if (g.size() != dim) throw std::invalid_argument("run_wga: dictionary dimension mismatch");
    const double n = norm(g);
    if (std::abs(n - 1.0) > 1e-12)
      throw std::invalid_argument("run_wga: dictionary element not unit norm");
    dict.push_back(scale(1.0 / n, g));
  }
  if (options.a_ref && options.a_ref->size() != dim)
    throw std::invalid_argument("run_wga: reference point dimension mismatch");

  Trace trace;
  trace.x0 = x0;
  trace.a_ref = options.a_ref ? options.a_ref : std::optional<Vector>(Vector(dim, 0.0));
  trace.family.reserve(dict.size());
  for (const Vector& g : dict) trace.family.push_back(ConvexSet::hyperplane(g));
  trace.tol = options.tol;
  trace.retention_stride = effective_stride(options, dim);

  const Vector& ref = *trace.a_ref;
  Selector selector(policy, dict.size());
  const bool dictated = selector.dictated();

  Vector x = x0;
  std::vector<double> ips(dict.size());
  std::vector<double> gains(dict.size());
  int small_step_streak = 0;
  trace.stop_reason = StopReason::Horizon;

  trace.iterate_steps.push_back(0);
  trace.iterates.push_back(x);

  for (std::int64_t n = 0; n < options.horizon; ++n) {
    double gain_max = 0.0;
    for (std::size_t k = 0; k < dict.size(); ++k) {
      ips[k] = inner(x, dict[k]);
      gains[k] = std::abs(ips[k]);
      gain_max = std::max(gain_max, gains[k]);
    }
    if (gain_max <= options.tol || norm(x) <= options.tol) {
      trace.stop_reason = StopReason::InIntersection;
      break;
    }

    const double t_required = schedule.at(n);
    const std::size_t alpha = selector.choose(n, gains, gain_max, t_required);
    const Vector x_next = axpy(-ips[alpha], dict[alpha], x);
    if (!is_finite(x_next)) throw std::runtime_error("run_wga: non-finite residual at step " + std::to_string(n));

    const Vector y = sub(x, x_next);
    const double step_norm = norm(y);
    const double x_norm = dist(x_next, ref);

    StepRecord rec;
    rec.n = n;
    rec.alpha = (std::int32_t)alpha;
    rec.dist_chosen = gains[alpha];
    rec.dist_max = gain_max;
    rec.t_required = t_required;
    rec.t_effective = gain_max > 0.0 ? gains[alpha] / gain_max : 1.0;
    rec.step_norm = step_norm;
    rec.x_norm = x_norm;
    if (step_norm > 0.0 && x_norm > 0.0) {
      const double ratio = (inner(y, sub(x_next, ref))) / (step_norm * x_norm);
      rec.sin_eps = std::clamp(ratio, 0.0, 1.0);
    }
    if (dictated) rec.weakness_flag = gains[alpha] < t_required * gain_max - kWeaknessSlack;
    trace.steps.push_back(rec);

    x = x_next;
    if ((n + 1) % trace.retention_stride == 0) {
      trace.iterate_steps.push_back(n + 1);
      trace.iterates.push_back(x);
    }

    small_step_streak = step_norm <= options.tol ? small_step_streak + 1 : 0;
    if (small_step_streak >= kConvergedStreak) {
      trace.stop_reason = StopReason::Converged;
      break;
    }
  }

  if (trace.stop_reason == StopReason::Horizon && norm(x) <= options.tol)
    trace.stop_reason = StopReason::InIntersection;
  if (trace.stop_reason == StopReason::Horizon) {
    double gain_max = 0.0;
    for (const Vector& g : dict) gain_max = std::max(gain_max, std::abs(inner(x, g)));
    if (gain_max <= options.tol) trace.stop_reason = StopReason::InIntersection;
  }

  const std::int64_t last_step = trace.steps.empty() ? 0 : trace.steps.back().n + 1;
  if (trace.iterate_steps.back() != last_step) {
    trace.iterate_steps.push_back(last_step);
    trace.iterates.push_back(x);
  }
  trace.final_point = std::move(x);
  return trace;
}

std::vector<double> effective_weakness(const Trace& trace) {
  std::vector<double> values;
  values.reserve(trace.steps.size());
  for (const StepRecord& s : trace.steps) {
    if (s.dist_max <= trace.tol) continue;  // terminal
    values.push_back(s.t_effective);
  }
  return values;
}

}  // namespace remoteproj

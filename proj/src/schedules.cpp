#include "remoteproj/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace remoteproj {

namespace {

void require_unit_interval(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0)
    throw std::invalid_argument(std::string(what) + ": value must lie in [0,1]");
}

}  // namespace

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Constant: return "constant";
    case ScheduleKind::Power: return "power";
    case ScheduleKind::HarmonicLog: return "harmonic_log";
    case ScheduleKind::Explicit: return "explicit";
    case ScheduleKind::Alternating: return "alternating";
  }
  throw std::logic_error("to_string(ScheduleKind): bad enum");
}

ScheduleKind schedule_kind_from_string(const std::string& s) {
  if (s == "constant") return ScheduleKind::Constant;
  if (s == "power") return ScheduleKind::Power;
  if (s == "harmonic_log") return ScheduleKind::HarmonicLog;
  if (s == "explicit") return ScheduleKind::Explicit;
  if (s == "alternating") return ScheduleKind::Alternating;
  throw std::invalid_argument("unknown schedule kind: " + s);
}

Schedule Schedule::constant(double c) {
  require_unit_interval(c, "constant schedule");
  return Schedule(ScheduleKind::Constant, {c});
}

Schedule Schedule::power(double exponent) {
  if (!std::isfinite(exponent) || exponent <= 0.0)
    throw std::invalid_argument("power schedule: exponent must be positive");
  return Schedule(ScheduleKind::Power, {exponent});
}

Schedule Schedule::harmonic_log() { return Schedule(ScheduleKind::HarmonicLog, {}); }

Schedule Schedule::explicit_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("explicit schedule: empty list");
  for (double v : values) require_unit_interval(v, "explicit schedule");
  return Schedule(ScheduleKind::Explicit, std::move(values));
}

Schedule Schedule::alternating(double hi, double lo) {
  require_unit_interval(hi, "alternating schedule");
  require_unit_interval(lo, "alternating schedule");
  return Schedule(ScheduleKind::Alternating, {hi, lo});
}

double Schedule::at(std::int64_t n) const {
  if (n < 0) throw std::invalid_argument("schedule index must be nonnegative");
  switch (kind_) {
    case ScheduleKind::Constant: return params_[0];
    case ScheduleKind::Power:
      return std::min(1.0, std::pow((double)(n + 1), -params_[0]));
    case ScheduleKind::HarmonicLog: {
      const double k = (double)(n + 2);
      return std::min(1.0, 1.0 / (k * std::log(k)));
    }
    case ScheduleKind::Explicit: {
      const std::size_t i = std::min<std::size_t>((std::size_t)n, params_.size() - 1);
      return params_[i];
    }
    case ScheduleKind::Alternating: return params_[n % 2 == 0 ? 0 : 1];
  }
  throw std::logic_error("Schedule::at: bad enum");
}

WindowCheck check_window_condition(const Schedule& schedule, double delta,
                                   std::int64_t K, std::int64_t horizon) {
  if (!(delta > 0.0)) throw std::invalid_argument("window condition: delta must be positive");
  if (K < 0) throw std::invalid_argument("window condition: K must be nonnegative");
  if (horizon < K + 1) throw std::invalid_argument("window condition: horizon too small");

  WindowCheck result;
  result.satisfied = true;
  // sliding max over t_n..t_{n+K}: recompute only when the max leaves the window
  std::vector<double> window((std::size_t)K + 1);
  for (std::int64_t i = 0; i <= K; ++i) window[(std::size_t)i] = schedule.at(i);
  for (std::int64_t n = 0; n + K <= horizon; ++n) {
    if (n > 0) window[(std::size_t)((n - 1) % (K + 1))] = schedule.at(n + K);
    const double mx = *std::max_element(window.begin(), window.end());
    if (!(mx > delta)) {
      result.satisfied = false;
      result.first_violation = n;
      return result;
    }
  }
  return result;
}

PartialSums partial_sum_diagnostics(const Schedule& schedule, std::int64_t M) {
  if (M < 1) throw std::invalid_argument("partial sums: M must be positive");
  PartialSums sums;
  for (std::int64_t n = 0; n < M; ++n) {
    const double t = schedule.at(n);
    sums.sum_sq += t * t;
    sums.sum_over_n += t / (double)(n + 1);
  }
  return sums;
}

WitnessSequence build_extremal_witness(const Schedule& schedule, std::int64_t M) {
  if (M < 1) throw std::invalid_argument("extremal witness: M must be positive");
  WitnessSequence w;
  w.a.resize((std::size_t)M);
  w.partial_sum.resize((std::size_t)M);
  w.b.resize((std::size_t)M);
  double S = 0.0;
  for (std::int64_t m = 1; m <= M; ++m) {
    const double t = schedule.at(m - 1);
    double a = 0.0;
    if (t > 0.0) {
      // nonnegative root of a*(S+a) = t, in the cancellation-free form
      a = 2.0 * t / (S + std::sqrt(S * S + 4.0 * t));
    }
    S += a;
    const std::size_t i = (std::size_t)(m - 1);
    w.a[i] = a;
    w.partial_sum[i] = S;
    w.b[i] = t > 0.0 ? a * S / t : 0.0;
    w.sum_sq += a * a;
  }
  return w;
}

std::string to_string(ConditionTLabel label) {
  switch (label) {
    case ConditionTLabel::Holds: return "holds";
    case ConditionTLabel::Fails: return "fails";
    case ConditionTLabel::Unknown: return "unknown";
  }
  throw std::logic_error("to_string(ConditionTLabel): bad enum");
}

ConditionTLabel classify_condition_t(const Schedule& schedule) {
  const auto& p = schedule.params();
  switch (schedule.kind()) {
    case ScheduleKind::Constant:
      // c > 0: sum t/(n+1) diverges; c = 0: sum t^2 = 0
      return p[0] > 0.0 ? ConditionTLabel::Holds : ConditionTLabel::Fails;
    case ScheduleKind::Power:
      // sum t^2 = sum (n+1)^(-2θ) converges iff θ > 1/2; sum t/(n+1)
      // converges for every θ > 0, so the chain certifies nothing below
      return p[0] > 0.5 ? ConditionTLabel::Fails : ConditionTLabel::Unknown;
    case ScheduleKind::HarmonicLog:
      // sum 1/((n+2) ln(n+2))^2 converges
      return ConditionTLabel::Fails;
    case ScheduleKind::Explicit:
      // tail is constant at the last value
      return p.back() > 0.0 ? ConditionTLabel::Holds : ConditionTLabel::Fails;
    case ScheduleKind::Alternating:
      return (p[0] > 0.0 || p[1] > 0.0) ? ConditionTLabel::Holds : ConditionTLabel::Fails;
  }
  throw std::logic_error("classify_condition_t: bad enum");
}

}  // namespace remoteproj

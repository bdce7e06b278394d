#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace remoteproj {

enum class ScheduleKind { Constant, Power, HarmonicLog, Explicit, Alternating };

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& s);

/// Weakness-parameter sequence {t_n}, a pure function of the step index.
/// Every generated value lies in [0, 1].
///   constant     t_n = c
///   power        t_n = min(1, (n+1)^-exponent)
///   harmonic_log t_n = min(1, 1 / ((n+2) ln(n+2)))
///   explicit     finite list, extended by its last value
///   alternating  period-2 pattern (hi, lo)
class Schedule {
 public:
  static Schedule constant(double c);
  static Schedule power(double exponent);
  static Schedule harmonic_log();
  static Schedule explicit_values(std::vector<double> values);
  static Schedule alternating(double hi, double lo);

  double at(std::int64_t n) const;

  ScheduleKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }

 private:
  Schedule(ScheduleKind kind, std::vector<double> params)
      : kind_(kind), params_(std::move(params)) {}
  ScheduleKind kind_;
  std::vector<double> params_;
};

struct WindowCheck {
  bool satisfied{false};
  // smallest n with max(t_n .. t_{n+K}) <= delta, when not satisfied
  std::optional<std::int64_t> first_violation;
};

/// True iff every window t_n..t_{n+K} with n + K <= horizon contains a
/// value strictly greater than delta.
WindowCheck check_window_condition(const Schedule& schedule, double delta,
                                   std::int64_t K, std::int64_t horizon);

struct PartialSums {
  double sum_sq{0.0};      // sum over n < M of t_n^2
  double sum_over_n{0.0};  // sum over n < M of t_n / (n+1)
};

PartialSums partial_sum_diagnostics(const Schedule& schedule, std::int64_t M);

/// Boundary-case witness for the summability criterion on {t_n}: the
/// nonnegative sequence a_m with a_m * (S_{m-1} + a_m) = t_m, i.e. the
/// sequence making (a_m / t_m) * sum_{nu<=m} a_nu identically 1. Step m
/// consumes the schedule value at index m-1. Rapid growth of sum a_m^2
/// means no square-summable sequence keeps that product away from zero
/// at unit scale; a bounded sum exhibits one that does.
struct WitnessSequence {
  std::vector<double> a;            // a_1..a_M
  std::vector<double> partial_sum;  // S_m = sum_{nu<=m} a_nu
  std::vector<double> b;            // (a_m/t_m)*S_m, 0 where t_m = 0
  double sum_sq{0.0};               // sum a_m^2
};

WitnessSequence build_extremal_witness(const Schedule& schedule, std::int64_t M);

/// Classification of the liminf criterion by the implication chain
///   sum t_n/(n+1) = inf  =>  holds  =>  sum t_n^2 = inf,
/// decided per kind in closed form; Unknown where the chain is silent
/// (power exponents <= 1/2).
enum class ConditionTLabel { Holds, Fails, Unknown };

std::string to_string(ConditionTLabel label);
ConditionTLabel classify_condition_t(const Schedule& schedule);

}  // namespace remoteproj

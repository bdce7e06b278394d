#pragma once

#include <cstdint>
#include <vector>

#include "remoteproj/engine.hpp"
#include "remoteproj/schedules.hpp"
#include "remoteproj/vec.hpp"

namespace remoteproj {

struct EnergyReport {
  bool ok{false};
  double max_step_violation{0.0};  // worst per-step excess over the identity
  double sum_step_sq{0.0};
  double budget{0.0};  // |x0 - a_ref|^2
};

/// Checks, against a trace with a reference point in the intersection,
/// that |x_n - a|^2 >= |x_{n+1} - a|^2 + |y_n|^2 holds per step (within
/// 1e-9) and that the step norms are square-summable within the budget
/// |x0 - a|^2 + 1e-6.
EnergyReport check_energy(const Trace& trace);

struct SinSummabilityReport {
  bool ok{false};
  double partial_sum{0.0};
  double bound{0.0};
  double max_step_violation{0.0};
};

/// Per-step bound step_norm * sin_eps <= (|x_n-a|^2 - |x_{n+1}-a|^2) / (2 R_floor)
/// plus the summed version. R_floor must undercut every recorded |x_n - a|.
SinSummabilityReport check_sin_summability(const Trace& trace, double R_floor);

struct RateBoundReport {
  Vector center;
  double radius{0.0};
  std::vector<std::int64_t> at_step;  // retained iterate indices
  std::vector<double> bound;          // B_n
  std::vector<double> actual;         // A_n = |x_n - final|
  std::vector<std::int64_t> violations;
};

/// Geometric error bound for families all containing the ball B(a, r):
///   B_n = 2 |x0 - a| * prod_{k<n} (1 - t_k^2 r^2 / |x0-a|^2)^{1/2},
/// compared per retained iterate against A_n = |x_n - w| with w the final
/// iterate. Containment is verified first (closed-form certificate plus
/// probe directions); a negative product factor clamps the bound to zero.
RateBoundReport check_rate_bound(const Trace& trace, const Vector& a, double r,
                                 const Schedule& schedule);

struct ConvergenceVerdict {
  bool norm_cauchy{false};
  std::vector<bool> weak_proxy;  // one flag per test functional
  std::vector<double> functional_oscillation;
  double residual_floor{0.0};  // min |x_n - a_ref| over the tail
  double tail_diameter{0.0};   // max pairwise distance over the tail
};

/// Tail-based convergence detection over the retained iterates. The tail
/// is the last tail_fraction of them. norm_cauchy holds when the tail
/// diameter is below 1e-6 * (1 + |x0|); the per-functional proxy bounds
/// the oscillation of <x_n, u> by 1e-6 * (1 + |x0|) * |u|. The proxy is
/// an observable stand-in for weak convergence, not a decision procedure.
ConvergenceVerdict detect_convergence(const Trace& trace,
                                      const std::vector<Vector>& test_functionals,
                                      double tail_fraction = 0.25);

struct FejerReport {
  bool ok{false};
  double max_violation{0.0};
};

/// |x_{n+1} - v| <= |x_n - v| + 1e-9 along consecutive retained iterates,
/// for a point v within tol of every family set.
FejerReport check_fejer(const Trace& trace, const Vector& v);

/// Certificate + probe verification that B(a,r) lies inside every family
/// member: per-kind closed form, 2*dim axis directions, and 32 seeded
/// random directions.
bool ball_contained_in_all(const std::vector<ConvexSet>& family, const Vector& a,
                           double r, std::uint64_t probe_seed = 0);

}  // namespace remoteproj

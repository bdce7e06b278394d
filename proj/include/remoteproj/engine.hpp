#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "remoteproj/convex_sets.hpp"
#include "remoteproj/schedules.hpp"
#include "remoteproj/vec.hpp"

namespace remoteproj {

enum class PolicyKind { Remotest, ThresholdFirst, Scripted, Cyclic, QuasiPeriodic, Random };

std::string to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& s);

/// How the engine picks the set to project onto at each step.
///   remotest        argmax of the distances (lowest index on ties)
///   threshold_first first index whose distance meets t_n * max - 1e-9
///   scripted        a fixed index per step
///   cyclic          n mod family size
///   quasi_periodic  scripted, with every length-M window of the index
///                   list required to contain all of 0..K-1
///   random          uniform index stream from a seed
struct SelectionPolicy {
  PolicyKind kind{PolicyKind::Remotest};
  std::vector<std::int32_t> indices;  // Scripted / QuasiPeriodic
  std::int64_t window{0};            // QuasiPeriodic M
  std::int64_t family_size{0};       // QuasiPeriodic K (validation only)
  std::uint64_t seed{0};             // Random

  static SelectionPolicy remotest();
  static SelectionPolicy threshold_first();
  static SelectionPolicy scripted(std::vector<std::int32_t> indices);
  static SelectionPolicy cyclic();
  static SelectionPolicy quasi_periodic(std::vector<std::int32_t> indices,
                                        std::int64_t window, std::int64_t family_size);
  static SelectionPolicy random(std::uint64_t seed);
};

enum class StopReason { Converged, Horizon, InIntersection };

std::string to_string(StopReason reason);

struct StepRecord {
  std::int64_t n{0};
  std::int32_t alpha{0};      // chosen family index
  double dist_chosen{0.0};    // distance to the chosen set before the step
  double dist_max{0.0};       // max distance over the family
  double t_required{0.0};     // schedule value at n
  double t_effective{0.0};    // dist_chosen / dist_max (1 when dist_max = 0)
  double step_norm{0.0};      // |x_n - x_{n+1}|
  double x_norm{0.0};         // |x_{n+1} - a_ref| (origin when a_ref absent)
  double sin_eps{0.0};        // <y_n, x_{n+1}-a_ref> / (step_norm * x_norm), clamped to [0,1]
  bool weakness_flag{false};  // dictated step fell short of t_required * dist_max - 1e-9
};

struct Trace {
  Vector x0;
  std::optional<Vector> a_ref;
  std::vector<ConvexSet> family;
  std::vector<StepRecord> steps;
  std::vector<std::int64_t> iterate_steps;  // indices n of retained iterates
  std::vector<Vector> iterates;             // x_n for those indices
  Vector final_point;
  StopReason stop_reason{StopReason::Horizon};
  double tol{0.0};
  std::int64_t retention_stride{1};

  std::size_t weakness_flag_count() const;
  const Vector* iterate_at(std::int64_t n) const;
};

struct RunOptions {
  std::int64_t horizon{1000};
  double tol{1e-12};
  std::optional<Vector> a_ref;
  std::int64_t stride{0};  // 0 = every step below dimension 64, every 10th above
};

/// Remote-projection iteration: x_{n+1} = P_{C_alpha(n)} x_n. Selection
/// policies either enforce the weakness inequality
///   dist(x_n, C_alpha(n)) >= t_n * max_k dist(x_n, C_k) - 1e-9
/// (remotest, threshold_first) or dictate the index, in which case the
/// engine verifies the inequality and flags shortfalls without aborting.
/// Stops when the max distance drops to tol (in the intersection), when
/// the step norm stays below tol for 10 consecutive steps, or at the
/// horizon.
Trace run_remote(const std::vector<ConvexSet>& family, const Schedule& schedule,
                 const Vector& x0, const SelectionPolicy& policy,
                 const RunOptions& options);

/// Greedy residual iteration over a dictionary of unit vectors:
/// x_{n+1} = x_n - <x_n, g_n> g_n with g_n maximizing |<x_n, g>| under
/// the same selection policies. Step for step this is run_remote on the
/// family of hyperplanes orthogonal to the dictionary.
Trace run_wga(const std::vector<Vector>& dictionary, const Schedule& schedule,
              const Vector& x0, const RunOptions& options,
              const SelectionPolicy& policy = SelectionPolicy::remotest());

/// Per-step ratios dist_chosen / dist_max from a trace, excluding steps
/// already inside the intersection at the run tolerance.
std::vector<double> effective_weakness(const Trace& trace);

}  // namespace remoteproj

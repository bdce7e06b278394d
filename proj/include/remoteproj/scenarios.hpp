#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "remoteproj/convex_sets.hpp"
#include "remoteproj/engine.hpp"
#include "remoteproj/schedules.hpp"
#include "remoteproj/vec.hpp"

namespace remoteproj {

struct BallExtras {
  Vector center;
  double radius{0.0};
};

struct CapExtras {
  std::int64_t m{0};           // first walk step; scripted prefix ends here
  Vector pole;                 // cap axis
  Vector tangent_axis;         // oscillation axis (the functional to watch)
  std::vector<double> tau;     // tau_n for n = 0..horizon
  double tau_tail_sq_realized{0.0};  // sum of tau_n^2 over m..horizon
  double tau_tail_sq_bound{0.0};     // certified analytic bound at m
};

struct ScenarioExtras {
  std::optional<Vector> reference_point;  // analytic nearest point of the intersection
  std::optional<BallExtras> ball;
  std::optional<std::int64_t> window;  // quasi-periodicity constant M
  std::optional<bool> symmetric;
  std::optional<CapExtras> cap;
};

/// Everything needed to reproduce one experiment.
struct ScenarioConfig {
  std::string name;
  std::vector<ConvexSet> family;
  Schedule schedule{Schedule::constant(1.0)};
  SelectionPolicy policy;
  Vector x0;
  std::int64_t horizon{1000};
  std::optional<Vector> a_ref;
  ScenarioExtras extras;
};

/// Planar pair (vertical line, diagonal stripe), both symmetric about the
/// origin, where the remotest projections from (-4, 4) stop at (0, 1)
/// while the nearest point of the intersection is (0, 2).
ScenarioConfig stripe_example();

/// Countable family of lines through a spherical cap driven by a
/// square-summable angle sequence tau_n = max(t_n, 1/((n+2) ln(n+2))).
/// The scripted run alternates between the two opposite boundary lines
/// until step m (chosen so the certified tail bound on sum tau^2 drops
/// below 1/4, with parity putting x_m on the first of them), then walks
/// line to line with consecutive direction cosines exactly
/// sqrt(1 - tau_n^2). Norms stay above sqrt(3)/2 |x_m| while the iterates
/// keep sweeping the cap, so there is no norm limit.
ScenarioConfig cap_lines(const Schedule& t, std::int64_t horizon, std::size_t dim,
                         std::uint64_t walk_seed);

/// Random half-spaces all containing the ball B(0, r), start at norm 8r.
ScenarioConfig ball_interior(int n_sets, std::size_t dim, double r,
                             std::uint64_t seed, const Schedule& schedule,
                             std::int64_t horizon = 2000);

/// K random primitives sharing the origin, projected in a dictated order
/// in which every window of M consecutive indices covers all K sets. The
/// symmetric variant uses only balls and slabs centered at the origin.
ScenarioConfig quasi_periodic(int K, std::int64_t M, std::size_t dim,
                              std::uint64_t seed, std::int64_t horizon,
                              bool symmetric = false);

}  // namespace remoteproj

#include "remoteproj/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace remoteproj {

namespace {

double harmonic_log_term(std::int64_t n) {
  const double k = (double)(n + 2);
  return 1.0 / (k * std::log(k));
}

// Upper bound on sum_{n>=m} 1/((n+2) ln(n+2))^2: pull 1/ln^2 out at the
// first term and bound the remaining sum of k^-2 by the integral.
double harmonic_log_tail_sq_bound(std::int64_t m) {
  const double lo = std::log((double)(m + 2));
  return 1.0 / (lo * lo * (double)(m + 1));
}

// Certified upper bound on sum_{n>=m} t_n^2 for schedule kinds whose
// square sums converge; throws for kinds where they do not.
double schedule_tail_sq_bound(const Schedule& t, std::int64_t m) {
  const auto& p = t.params();
  switch (t.kind()) {
    case ScheduleKind::Constant:
      if (p[0] == 0.0) return 0.0;
      break;
    case ScheduleKind::Power: {
      const double theta = p[0];
      if (theta > 0.5) {
        // sum_{k>m} k^-2theta <= integral_m^inf x^-2theta dx
        return std::pow((double)m, 1.0 - 2.0 * theta) / (2.0 * theta - 1.0);
      }
      break;
    }
    case ScheduleKind::HarmonicLog: return harmonic_log_tail_sq_bound(m);
    case ScheduleKind::Explicit: {
      if (p.back() == 0.0) {
        double s = 0.0;
        for (std::int64_t n = m; n < (std::int64_t)p.size(); ++n) s += t.at(n) * t.at(n);
        return s;
      }
      break;
    }
    case ScheduleKind::Alternating:
      if (p[0] == 0.0 && p[1] == 0.0) return 0.0;
      break;
  }
  throw std::invalid_argument(
      "cap_lines: schedule must have a convergent square sum (power with exponent > 1/2, "
      "a zero tail, or all-zero values)");
}

}  // namespace

ScenarioConfig stripe_example() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ScenarioConfig config;
  config.name = "stripe_example";
  config.family.push_back(ConvexSet::hyperplane({1.0, 0.0}));
  config.family.push_back(
      ConvexSet::slab({inv_sqrt2, -inv_sqrt2}, -std::sqrt(2.0), std::sqrt(2.0)));
  config.schedule = Schedule::constant(1.0);
  config.policy = SelectionPolicy::remotest();
  config.x0 = {-4.0, 4.0};
  config.horizon = 16;
  config.a_ref = Vector{0.0, 0.0};
  config.extras.reference_point = Vector{0.0, 2.0};
  return config;
}

ScenarioConfig cap_lines(const Schedule& t, std::int64_t horizon, std::size_t dim,
                         std::uint64_t walk_seed) {
  if (dim < 3) throw std::invalid_argument("cap_lines: dimension must be at least 3");
  if (horizon < 1) throw std::invalid_argument("cap_lines: horizon must be positive");

  // smallest m whose certified tail bound on sum tau^2 undercuts 1/4;
  // tau = max(t, harmonic_log) gives tau^2 <= t^2 + harmonic_log^2
  std::int64_t m = -1;
  double bound_at_m = 0.0;
  for (std::int64_t candidate = 1; candidate <= 100000000; ++candidate) {
    const double bound =
        schedule_tail_sq_bound(t, candidate) + harmonic_log_tail_sq_bound(candidate);
    if (bound < 0.25) {
      m = candidate;
      bound_at_m = bound;
      break;
    }
  }
  if (m < 0) throw std::runtime_error("cap_lines: no feasible prefix length found");
  if (horizon < m)
    throw std::invalid_argument("cap_lines: horizon " + std::to_string(horizon) +
                                " is below the required prefix length " + std::to_string(m));

  const double half = 0.5;
  const double height = std::sqrt(3.0) / 2.0;
  const Vector pole = unit_axis(dim, 0);
  const Vector w1 = unit_axis(dim, 1);
  const Vector w2 = unit_axis(dim, 2);

  CapExtras cap;
  cap.m = m;
  cap.pole = pole;
  cap.tangent_axis = w1;
  cap.tau.resize((std::size_t)horizon + 1);
  for (std::int64_t n = 0; n <= horizon; ++n)
    cap.tau[(std::size_t)n] = std::max(t.at(n), harmonic_log_term(n));
  for (std::int64_t n = m; n <= horizon; ++n)
    cap.tau_tail_sq_realized += cap.tau[(std::size_t)n] * cap.tau[(std::size_t)n];
  cap.tau_tail_sq_bound = bound_at_m;

  // boundary circle of the cap: (sqrt(3)/2) pole + (1/2) c with |c| = 1
  // in span{w1, w2}; opposite boundary points sit at c = +-w1
  auto circle_point = [&](double c1, double c2) {
    Vector v = scale(height, pole);
    v[1] += half * c1;
    v[2] += half * c2;
    return v;
  };
  const Vector point_a = circle_point(1.0, 0.0);
  const Vector point_b = circle_point(-1.0, 0.0);

  ScenarioConfig config;
  config.name = "cap_lines";
  config.schedule = t;
  config.x0 = pole;
  config.horizon = horizon;
  config.a_ref = Vector(dim, 0.0);
  config.family.push_back(ConvexSet::line(point_a));
  config.family.push_back(ConvexSet::line(point_b));

  // walk along the boundary circle; the turn angle omega_n satisfies
  // cos omega_n = 4 sqrt(1 - tau_n^2) - 3, which makes consecutive line
  // direction cosines exactly sqrt(1 - tau_n^2)
  std::mt19937_64 rng(walk_seed ^ 0x9e3779b97f4a7c15ULL);
  int dir = (rng() & 1) ? 1 : -1;
  double c1 = 1.0, c2 = 0.0;  // c_m = +w1, so s_m = point_a
  config.family.push_back(ConvexSet::line(circle_point(c1, c2)));
  for (std::int64_t n = m; n <= horizon; ++n) {
    const double tau = cap.tau[(std::size_t)n];
    const double z = 4.0 * std::sqrt(1.0 - tau * tau) - 3.0;
    const double sz = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double next1 = c1 * z - (double)dir * c2 * sz;
    const double next2 = (double)dir * c1 * sz + c2 * z;
    const double len = std::sqrt(next1 * next1 + next2 * next2);
    c1 = next1 / len;
    c2 = next2 / len;
    if (dir > 0 && c1 <= -0.5) dir = -1;
    else if (dir < 0 && c1 >= 0.5) dir = 1;
    config.family.push_back(ConvexSet::line(circle_point(c1, c2)));
  }

  // scripted indices: alternate the two boundary lines so that step m-1
  // lands on the first of them, then follow the walk
  std::vector<std::int32_t> script((std::size_t)horizon);
  for (std::int64_t j = 0; j < m; ++j)
    script[(std::size_t)j] = ((m - 1 - j) % 2 == 0) ? 0 : 1;
  for (std::int64_t n = m; n < horizon; ++n)
    script[(std::size_t)n] = (std::int32_t)(2 + (n + 1 - m));
  config.policy = SelectionPolicy::scripted(std::move(script));
  config.extras.cap = std::move(cap);
  return config;
}

ScenarioConfig ball_interior(int n_sets, std::size_t dim, double r,
                             std::uint64_t seed, const Schedule& schedule,
                             std::int64_t horizon) {
  if (n_sets < 2) throw std::invalid_argument("ball_interior: need at least two sets");
  if (!(r > 0.0)) throw std::invalid_argument("ball_interior: radius must be positive");
  if (dim < 2) throw std::invalid_argument("ball_interior: dimension must be at least 2");

  std::mt19937_64 rng(seed ^ 0xb5297a4d3f84d5b5ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto random_dir = [&]() {
    Vector v(dim);
    double n = 0.0;
    do {
      for (std::size_t i = 0; i < dim; ++i) v[i] = gauss(rng);
      n = norm(v);
    } while (n == 0.0);
    return scale(1.0 / n, v);
  };

  ScenarioConfig config;
  config.name = "ball_interior";
  config.schedule = schedule;
  config.policy = SelectionPolicy::threshold_first();
  config.horizon = horizon;
  config.a_ref = Vector(dim, 0.0);
  for (int i = 0; i < n_sets; ++i) {
    // offset >= r keeps B(0, r) inside: <0, g> + r = r <= c
    const double c = r * (1.0 + 2.0 * unif(rng));
    config.family.push_back(ConvexSet::halfspace(random_dir(), c));
  }
  config.x0 = scale(8.0 * r, random_dir());
  config.extras.ball = BallExtras{Vector(dim, 0.0), r};
  return config;
}

ScenarioConfig quasi_periodic(int K, std::int64_t M, std::size_t dim,
                              std::uint64_t seed, std::int64_t horizon,
                              bool symmetric) {
  if (K < 2) throw std::invalid_argument("quasi_periodic: need at least two sets");
  if (M < K) throw std::invalid_argument("quasi_periodic: window must be at least the family size");
  if (horizon < M) throw std::invalid_argument("quasi_periodic: horizon shorter than one window");

  std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc909ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto random_dir = [&]() {
    Vector v(dim);
    double n = 0.0;
    do {
      for (std::size_t i = 0; i < dim; ++i) v[i] = gauss(rng);
      n = norm(v);
    } while (n == 0.0);
    return scale(1.0 / n, v);
  };

  ScenarioConfig config;
  config.name = "quasi_periodic";
  config.schedule = Schedule::constant(0.0);  // t is measured, not prescribed
  config.horizon = horizon;
  config.a_ref = Vector(dim, 0.0);

  for (int i = 0; i < K; ++i) {
    if (symmetric) {
      if (i % 2 == 0) {
        config.family.push_back(ConvexSet::ball(Vector(dim, 0.0), 0.5 + unif(rng)));
      } else {
        const double u = 0.3 + 0.7 * unif(rng);
        config.family.push_back(ConvexSet::slab(random_dir(), -u, u));
      }
    } else {
      switch (i % 3) {
        case 0:
          config.family.push_back(ConvexSet::halfspace(random_dir(), 0.2 + 0.8 * unif(rng)));
          break;
        case 1: {
          const double lo = -(0.2 + 0.8 * unif(rng));
          const double hi = 0.2 + 0.8 * unif(rng);
          config.family.push_back(ConvexSet::slab(random_dir(), lo, hi));
          break;
        }
        default: {
          const double radius = 0.5 + unif(rng);
          config.family.push_back(ConvexSet::ball(scale(0.8 * radius * unif(rng), random_dir()), radius));
          break;
        }
      }
    }
  }

  // index list: one fixed permutation repeated keeps every window of
  // length >= K complete; for windows of 2K or more, independent
  // permutation blocks work too and give a richer order
  std::vector<std::int32_t> indices;
  indices.reserve((std::size_t)horizon + (std::size_t)K);
  std::vector<std::int32_t> block((std::size_t)K);
  for (int i = 0; i < K; ++i) block[(std::size_t)i] = i;
  const bool fresh_blocks = M >= 2 * (std::int64_t)K;
  if (!fresh_blocks) std::shuffle(block.begin(), block.end(), rng);
  while ((std::int64_t)indices.size() < horizon) {
    if (fresh_blocks) std::shuffle(block.begin(), block.end(), rng);
    indices.insert(indices.end(), block.begin(), block.end());
  }
  indices.resize((std::size_t)horizon);
  config.policy = SelectionPolicy::quasi_periodic(std::move(indices), M, K);

  config.x0 = scale(4.0, random_dir());
  config.extras.window = M;
  config.extras.symmetric = symmetric;
  return config;
}

}  // namespace remoteproj

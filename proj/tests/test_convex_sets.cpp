#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "remoteproj/convex_sets.hpp"

using namespace remoteproj;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// the planar pair from the worked example: vertical line {s=0} and the
// diagonal stripe {s-2 <= t <= s+2}
ConvexSet example_line() { return ConvexSet::hyperplane({1.0, 0.0}); }
ConvexSet example_stripe() {
  return ConvexSet::slab({kInvSqrt2, -kInvSqrt2}, -std::sqrt(2.0), std::sqrt(2.0));
}

Vector random_point(std::mt19937_64& rng, std::size_t dim, double spread = 4.0) {
  std::normal_distribution<double> gauss(0.0, spread);
  Vector v(dim);
  for (double& x : v) x = gauss(rng);
  return v;
}

Vector random_unit(std::mt19937_64& rng, std::size_t dim) {
  Vector v;
  double n = 0.0;
  do {
    v = random_point(rng, dim, 1.0);
    n = norm(v);
  } while (n == 0.0);
  return scale(1.0 / n, v);
}

ConvexSet random_set(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  switch (rng() % 5) {
    case 0: return ConvexSet::hyperplane(random_unit(rng, dim));
    case 1: return ConvexSet::halfspace(random_unit(rng, dim), 2.0 * unif(rng) - 0.5);
    case 2: {
      const double lo = -2.0 * unif(rng) - 0.1;
      return ConvexSet::slab(random_unit(rng, dim), lo, lo + 3.0 * unif(rng) + 0.1);
    }
    case 3: return ConvexSet::ball(random_point(rng, dim, 1.0), 0.5 + 2.0 * unif(rng));
    default: return ConvexSet::line(random_unit(rng, dim));
  }
}

}  // namespace

TEST_CASE("projection onto the stripe reproduces the worked values") {
  const ConvexSet stripe = example_stripe();
  const Vector p = project(stripe, {-4.0, 4.0});
  CHECK(p[0] == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(distance(stripe, {-4.0, 4.0}) == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("projection onto hyperplane and line") {
  CHECK(project(example_line(), {1.0, 1.0}) == Vector{0.0, 1.0});
  CHECK(distance(example_line(), {-4.0, 4.0}) == 4.0);
  const ConvexSet axis = ConvexSet::line({1.0, 0.0});
  CHECK(project(axis, {3.0, 4.0}) == Vector{3.0, 0.0});
}

TEST_CASE("projection onto ball, box, subspace, affine hyperplane") {
  const ConvexSet unit_ball = ConvexSet::ball({0.0, 0.0}, 1.0);
  CHECK(distance(unit_ball, {2.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(project(unit_ball, {2.0, 0.0})[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(project(unit_ball, {0.3, 0.1}) == Vector{0.3, 0.1});

  const ConvexSet box = ConvexSet::box({-1.0, -1.0}, {1.0, 2.0});
  CHECK(project(box, {3.0, 0.5}) == Vector{1.0, 0.5});

  const ConvexSet plane = ConvexSet::subspace({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  CHECK(project(plane, {2.0, 3.0, 5.0}) == Vector{2.0, 3.0, 0.0});

  const ConvexSet affine = ConvexSet::affine_hyperplane({0.0, 1.0}, 2.0);
  CHECK(project(affine, {7.0, 5.0}) == Vector{7.0, 2.0});
  CHECK(distance(affine, {7.0, 5.0}) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(ConvexSet::hyperplane({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexSet::slab({1.0, 0.0}, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ConvexSet::ball({0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ConvexSet::ball({0.0}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(ConvexSet::subspace({{1.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexSet::box({1.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(project(ConvexSet::hyperplane({1.0, 0.0}), {1.0, 2.0, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("projection is idempotent and nonexpansive; distance matches the residual") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = 2 + (std::size_t)(rng() % 7);
    const ConvexSet set = random_set(rng, dim);
    const Vector x = random_point(rng, dim);
    const Vector y = random_point(rng, dim);
    const Vector px = project(set, x);
    const Vector py = project(set, y);

    CHECK(dist(project(set, px), px) <= 1e-10);
    CHECK(dist(px, py) <= dist(x, y) + 1e-9);
    CHECK(distance(set, x) == doctest::Approx(dist(x, px)).epsilon(1e-9));
    CHECK(distance(set, px) <= 1e-9 * (1.0 + norm(px)));

    // variational characterization against sampled member points
    for (int probe = 0; probe < 4; ++probe) {
      const Vector z = project(set, random_point(rng, dim));
      const double lhs = inner(sub(x, px), sub(z, px));
      CHECK(lhs <= 1e-9 * (1.0 + dist(x, px) * dist(z, px)));
    }
  }
}

TEST_CASE("pythagoras inequality against member points") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + (std::size_t)(rng() % 7);
    const ConvexSet set = random_set(rng, dim);
    const Vector x = random_point(rng, dim);
    const Vector a = project(set, random_point(rng, dim));  // a member point
    const Vector px = project(set, x);
    const double d = distance(set, x);
    CHECK(dist_sq(x, a) >= dist_sq(px, a) + d * d - 1e-9);
  }
}

TEST_CASE("quasi-symmetry estimator: symmetric sets report theta 1") {
  const Vector origin2{0.0, 0.0};

  const ConvexSet plane = ConvexSet::subspace({{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}});
  const auto sub_report = estimate_quasi_symmetry(plane, {0.0, 0.0, 0.0}, 2.0, 64, 5);
  REQUIRE(sub_report.theta.has_value());
  CHECK(*sub_report.theta == 1.0);

  const auto line_report = estimate_quasi_symmetry(example_line(), origin2, 3.0, 64, 6);
  REQUIRE(line_report.theta.has_value());
  CHECK(*line_report.theta == 1.0);

  const auto stripe_report = estimate_quasi_symmetry(example_stripe(), origin2, 3.0, 64, 7);
  REQUIRE(stripe_report.theta.has_value());
  CHECK(*stripe_report.theta == 1.0);
}

TEST_CASE("quasi-symmetry estimator: halfspace through the origin fails with a witness") {
  std::mt19937_64 rng(55);
  const ConvexSet half = ConvexSet::halfspace(random_unit(rng, 3), 0.0);
  const auto report = estimate_quasi_symmetry(half, {0.0, 0.0, 0.0}, 1.0, 64, 8);
  CHECK_FALSE(report.theta.has_value());
  REQUIRE(report.witness.has_value());
  CHECK(inner(*report.witness, half.normal) < 0.0);
  CHECK(contains(half, *report.witness));
}

TEST_CASE("quasi-symmetry estimator: off-center ball gets a partial factor") {
  // ball B((1,0), 2) about a = 0: reflection -theta*x stays inside for
  // theta = 1/3 (boundary point (3,0) maps to (-1,0)) but not for theta = 1
  const ConvexSet ball = ConvexSet::ball({1.0, 0.0}, 2.0);
  const auto report = estimate_quasi_symmetry(ball, {0.0, 0.0}, 3.0, 128, 9);
  REQUIRE(report.theta.has_value());
  CHECK(*report.theta < 1.0);
  CHECK(*report.theta >= 0.25);  // grid value at or below 1/3
}

TEST_CASE("quasi-symmetry estimator rejects bad inputs") {
  const ConvexSet ball = ConvexSet::ball({5.0, 5.0}, 0.5);
  CHECK_THROWS_AS(estimate_quasi_symmetry(ball, {0.0, 0.0}, 1.0, 16, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_quasi_symmetry(ball, {5.0, 5.0}, -1.0, 16, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_quasi_symmetry(ball, {5.0, 5.0}, 1.0, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("ball containment certificates") {
  CHECK(contains_ball(ConvexSet::halfspace({1.0, 0.0}, 1.0), {0.0, 0.0}, 1.0));
  CHECK_FALSE(contains_ball(ConvexSet::halfspace({1.0, 0.0}, 0.5), {0.0, 0.0}, 1.0));
  CHECK(contains_ball(ConvexSet::ball({0.0, 0.0}, 2.0), {0.5, 0.0}, 1.0));
  CHECK_FALSE(contains_ball(ConvexSet::hyperplane({1.0, 0.0}), {0.0, 0.0}, 0.1));
  CHECK(contains_ball(ConvexSet::slab({1.0, 0.0}, -1.0, 1.0), {0.0, 0.0}, 0.9));
  CHECK_FALSE(contains_ball(ConvexSet::slab({1.0, 0.0}, -1.0, 1.0), {0.5, 0.0}, 0.9));
  CHECK(contains_ball(ConvexSet::box({-1.0, -1.0}, {1.0, 1.0}), {0.0, 0.0}, 0.9));
}

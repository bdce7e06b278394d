#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "remoteproj/vec.hpp"

using namespace remoteproj;

namespace {

Vector random_vector(std::mt19937_64& rng, std::size_t dim, double scale_factor = 4.0) {
  std::normal_distribution<double> gauss(0.0, scale_factor);
  Vector v(dim);
  for (double& x : v) x = gauss(rng);
  return v;
}

}  // namespace

TEST_CASE("inner product basics") {
  CHECK(inner({1.0, 0.0}, {0.0, 1.0}) == 0.0);
  CHECK(inner({1.0, 1.0}, {1.0, 1.0}) == 2.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // (-4 + 4) / sqrt(2)
  CHECK(inner({-4.0, 4.0}, {inv_sqrt2, inv_sqrt2}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(inner({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("inner product is symmetric and bilinear") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + (std::size_t)(rng() % 12);
    const Vector u = random_vector(rng, dim);
    const Vector v = random_vector(rng, dim);
    const Vector w = random_vector(rng, dim);
    CHECK(inner(u, v) == doctest::Approx(inner(v, u)).epsilon(1e-12));
    const double alpha = 0.75;
    CHECK(inner(axpy(alpha, u, w), v) ==
          doctest::Approx(alpha * inner(u, v) + inner(w, v)).epsilon(1e-10));
  }
}

TEST_CASE("norm basics") {
  CHECK(norm({0.0, 0.0, 0.0}) == 0.0);
  CHECK(norm({3.0, 4.0}) == 5.0);
  CHECK(norm({-4.0, 4.0}) == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(norm({-4.0, 4.0}) == doctest::Approx(5.656854249492381).epsilon(1e-15));
}

TEST_CASE("axpy basics") {
  const Vector x{2.0, 3.0};
  CHECK(axpy(0.0, x, {1.0, 5.0}) == Vector{1.0, 5.0});
  CHECK(axpy(1.0, {1.0, 0.0}, {0.0, 1.0}) == Vector{1.0, 1.0});
  CHECK(axpy(-1.0, x, x) == Vector{0.0, 0.0});
  CHECK_THROWS_AS(axpy(1.0, {1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("Cauchy-Schwarz holds on random vectors") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + (std::size_t)(rng() % 20);
    const Vector u = random_vector(rng, dim);
    const Vector v = random_vector(rng, dim);
    CHECK(std::abs(inner(u, v)) <= norm(u) * norm(v) + 1e-12);
  }
}

TEST_CASE("parallelogram law holds on random vectors") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + (std::size_t)(rng() % 20);
    const Vector u = random_vector(rng, dim);
    const Vector v = random_vector(rng, dim);
    const double lhs = norm_sq(add(u, v)) + norm_sq(sub(u, v));
    const double rhs = 2.0 * norm_sq(u) + 2.0 * norm_sq(v);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
  }
}

#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "remoteproj/schedules.hpp"

using namespace remoteproj;

TEST_CASE("schedule values per kind") {
  CHECK(Schedule::constant(1.0).at(0) == 1.0);
  CHECK(Schedule::constant(1.0).at(12345) == 1.0);
  CHECK(Schedule::power(0.5).at(3) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(Schedule::power(1.0).at(0) == 1.0);
  CHECK(Schedule::explicit_values({0.9, 0.1}).at(0) == 0.9);
  CHECK(Schedule::explicit_values({0.9, 0.1}).at(5) == 0.1);
  CHECK(Schedule::alternating(1.0, 0.0).at(0) == 1.0);
  CHECK(Schedule::alternating(1.0, 0.0).at(1) == 0.0);
  const double h0 = Schedule::harmonic_log().at(0);
  CHECK(h0 == doctest::Approx(1.0 / (2.0 * std::log(2.0))).epsilon(1e-15));
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(Schedule::constant(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::constant(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::power(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::explicit_values({}), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::alternating(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::constant(1.0).at(-1), std::invalid_argument);
}

TEST_CASE("schedule values stay in the unit interval") {
  std::mt19937_64 rng(3);
  const Schedule schedules[] = {Schedule::constant(0.3), Schedule::power(0.25),
                                Schedule::power(2.0), Schedule::harmonic_log(),
                                Schedule::explicit_values({1.0, 0.5, 0.0}),
                                Schedule::alternating(0.8, 0.2)};
  for (const Schedule& s : schedules) {
    for (int i = 0; i < 200; ++i) {
      const std::int64_t n = (std::int64_t)(rng() % 1000000);
      const double t = s.at(n);
      CHECK(t >= 0.0);
      CHECK(t <= 1.0);
    }
  }
}

TEST_CASE("window condition examples") {
  const auto always = check_window_condition(Schedule::constant(1.0), 0.5, 0, 1000);
  CHECK(always.satisfied);

  const auto alternating = check_window_condition(Schedule::alternating(1.0, 0.0), 0.5, 1, 1000);
  CHECK(alternating.satisfied);

  // power 1: max of the window is t_n = 1/(n+1); it stays above 0.01
  // exactly while n <= 98
  const auto power = check_window_condition(Schedule::power(1.0), 0.01, 5, 10000);
  CHECK_FALSE(power.satisfied);
  REQUIRE(power.first_violation.has_value());
  CHECK(*power.first_violation == 99);

  const auto zero = check_window_condition(Schedule::constant(0.0), 0.5, 3, 100);
  CHECK_FALSE(zero.satisfied);
  CHECK(*zero.first_violation == 0);
}

TEST_CASE("window condition is monotone in the horizon") {
  const Schedule s = Schedule::power(0.7);
  for (std::int64_t horizon : {50, 100, 400, 1600}) {
    const auto full = check_window_condition(s, 0.05, 4, horizon);
    const auto shorter = check_window_condition(s, 0.05, 4, horizon / 2);
    if (full.satisfied) CHECK(shorter.satisfied);
    if (!shorter.satisfied && full.first_violation && shorter.first_violation)
      CHECK(*full.first_violation == *shorter.first_violation);
  }
}

TEST_CASE("partial sums") {
  const auto constant = partial_sum_diagnostics(Schedule::constant(1.0), 10);
  CHECK(constant.sum_sq == doctest::Approx(10.0).epsilon(1e-15));

  // 1 + 1/2 + 1/3 + 1/4 = 25/12
  const auto power = partial_sum_diagnostics(Schedule::power(0.5), 4);
  CHECK(power.sum_sq == doctest::Approx(25.0 / 12.0).epsilon(1e-14));

  const auto zero = partial_sum_diagnostics(Schedule::constant(0.0), 100);
  CHECK(zero.sum_sq == 0.0);
  CHECK(zero.sum_over_n == 0.0);
}

TEST_CASE("partial sums are additive and monotone") {
  const Schedule s = Schedule::power(0.6);
  const auto first = partial_sum_diagnostics(s, 300);
  const auto both = partial_sum_diagnostics(s, 500);
  double tail_sq = 0.0, tail_over = 0.0;
  for (std::int64_t n = 300; n < 500; ++n) {
    tail_sq += s.at(n) * s.at(n);
    tail_over += s.at(n) / (double)(n + 1);
  }
  CHECK(both.sum_sq == doctest::Approx(first.sum_sq + tail_sq).epsilon(1e-9));
  CHECK(both.sum_over_n == doctest::Approx(first.sum_over_n + tail_over).epsilon(1e-9));
  CHECK(both.sum_sq >= first.sum_sq);
}

TEST_CASE("extremal witness for the constant-1 schedule") {
  const WitnessSequence w = build_extremal_witness(Schedule::constant(1.0), 10);
  CHECK(w.a[0] == 1.0);
  CHECK(w.a[1] == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-15));
  CHECK(w.a[1] == doctest::Approx(0.6180339887498949).epsilon(1e-15));
  for (double b : w.b) CHECK(b == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extremal witness for the zero schedule degenerates") {
  const WitnessSequence w = build_extremal_witness(Schedule::constant(0.0), 50);
  for (double a : w.a) CHECK(a == 0.0);
  CHECK(w.sum_sq == 0.0);
}

TEST_CASE("witness recursion invariants across schedules") {
  const Schedule schedules[] = {Schedule::constant(1.0), Schedule::constant(0.25),
                                Schedule::power(0.5), Schedule::power(1.5),
                                Schedule::harmonic_log(), Schedule::alternating(0.9, 0.0),
                                Schedule::explicit_values({0.5, 0.0, 1.0})};
  for (const Schedule& s : schedules) {
    const WitnessSequence w = build_extremal_witness(s, 2000);
    for (std::size_t i = 0; i < w.a.size(); ++i) {
      const double t = s.at((std::int64_t)i);
      CHECK(w.a[i] >= 0.0);
      CHECK(w.a[i] <= std::sqrt(t) + 1e-12);
      if (t > 0.0) {
        CHECK(w.a[i] * w.partial_sum[i] == doctest::Approx(t).epsilon(1e-9));
        CHECK(w.b[i] == doctest::Approx(1.0).epsilon(1e-9));
      } else {
        CHECK(w.a[i] == 0.0);
      }
    }
  }
}

TEST_CASE("witness sum of squares against the extended-precision reference") {
  // reference values from an extended-precision run of the same recursion
  const WitnessSequence w = build_extremal_witness(Schedule::constant(1.0), 1000);
  CHECK(w.sum_sq == doctest::Approx(4.6173733328528073).epsilon(1e-12));
}

TEST_CASE("summability labels from the implication chain") {
  CHECK(classify_condition_t(Schedule::constant(1.0)) == ConditionTLabel::Holds);
  CHECK(classify_condition_t(Schedule::constant(0.1)) == ConditionTLabel::Holds);
  CHECK(classify_condition_t(Schedule::constant(0.0)) == ConditionTLabel::Fails);
  CHECK(classify_condition_t(Schedule::power(1.0)) == ConditionTLabel::Fails);
  CHECK(classify_condition_t(Schedule::power(0.51)) == ConditionTLabel::Fails);
  CHECK(classify_condition_t(Schedule::power(0.5)) == ConditionTLabel::Unknown);
  CHECK(classify_condition_t(Schedule::power(0.25)) == ConditionTLabel::Unknown);
  CHECK(classify_condition_t(Schedule::harmonic_log()) == ConditionTLabel::Fails);
  CHECK(classify_condition_t(Schedule::alternating(0.5, 0.0)) == ConditionTLabel::Holds);
  CHECK(classify_condition_t(Schedule::explicit_values({0.9, 0.0})) == ConditionTLabel::Fails);
  CHECK(classify_condition_t(Schedule::explicit_values({0.0, 0.9})) == ConditionTLabel::Holds);
}

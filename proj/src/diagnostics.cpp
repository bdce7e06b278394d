#include "remoteproj/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace remoteproj {

namespace {

double ref_norm_before(const Trace& trace, std::size_t step_index, const Vector& ref) {
  if (step_index == 0) return dist(trace.x0, ref);
  return trace.steps[step_index - 1].x_norm;
}

}  // namespace

EnergyReport check_energy(const Trace& trace) {
  if (!trace.a_ref) throw std::invalid_argument("check_energy: trace has no reference point");
  const Vector& a = *trace.a_ref;

  EnergyReport report;
  report.budget = dist_sq(trace.x0, a);

  double worst = 0.0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const StepRecord& s = trace.steps[i];
    const double before = ref_norm_before(trace, i, a);
    const double lhs = s.x_norm * s.x_norm + s.step_norm * s.step_norm;
    worst = std::max(worst, lhs - before * before);
    report.sum_step_sq += s.step_norm * s.step_norm;
  }
  report.max_step_violation = worst;
  report.ok = worst <= 1e-9 && report.sum_step_sq <= report.budget + 1e-6;
  return report;
}

SinSummabilityReport check_sin_summability(const Trace& trace, double R_floor) {
  if (!trace.a_ref) throw std::invalid_argument("check_sin_summability: trace has no reference point");
  if (!(R_floor > 0.0)) throw std::invalid_argument("check_sin_summability: R_floor must be positive");
  const Vector& a = *trace.a_ref;

  double min_norm = dist(trace.x0, a);
  for (const StepRecord& s : trace.steps) min_norm = std::min(min_norm, s.x_norm);
  if (min_norm < R_floor - 1e-12)
    throw std::domain_error("check_sin_summability: R_floor exceeds a recorded norm");

  SinSummabilityReport report;
  double worst = 0.0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const StepRecord& s = trace.steps[i];
    const double before = ref_norm_before(trace, i, a);
    const double decrement = (before * before - s.x_norm * s.x_norm) / (2.0 * R_floor);
    const double term = s.step_norm * s.sin_eps;
    worst = std::max(worst, term - decrement);
    report.partial_sum += term;
  }
  const double start_sq = dist_sq(trace.x0, a);
  report.bound = (start_sq - min_norm * min_norm) / (2.0 * R_floor);
  report.max_step_violation = worst;
  report.ok = worst <= 1e-8 && report.partial_sum <= report.bound + 1e-6;
  return report;
}

RateBoundReport check_rate_bound(const Trace& trace, const Vector& a, double r,
                                 const Schedule& schedule) {
  if (!ball_contained_in_all(trace.family, a, r))
    throw std::domain_error("check_rate_bound: ball not contained in every family set");
  if (trace.iterates.empty()) throw std::invalid_argument("check_rate_bound: no retained iterates");

  RateBoundReport report;
  report.center = a;
  report.radius = r;

  const double start = dist(trace.x0, a);
  const double start_sq = start * start;
  const double tolerance = 1e-6 * (1.0 + start);
  const Vector& w = trace.final_point;

  // running product over all steps; sampled at the retained indices
  double product = 1.0;  // prod (1 - t_k^2 r^2 / |x0-a|^2), clamped at 0
  std::size_t next_retained = 0;
  const std::int64_t total = trace.steps.empty() ? 0 : trace.steps.back().n + 1;
  for (std::int64_t n = 0; n <= total; ++n) {
    while (next_retained < trace.iterate_steps.size() && trace.iterate_steps[next_retained] == n) {
      const double bound = 2.0 * start * std::sqrt(std::max(0.0, product));
      const double actual = dist(trace.iterates[next_retained], w);
      report.at_step.push_back(n);
      report.bound.push_back(bound);
      report.actual.push_back(actual);
      if (actual > bound + tolerance) report.violations.push_back(n);
      ++next_retained;
    }
    if (n < total && start_sq > 0.0) {
      const double t = schedule.at(n);
      const double factor = 1.0 - t * t * r * r / start_sq;
      product = factor < 0.0 ? 0.0 : product * factor;
    }
  }
  return report;
}

ConvergenceVerdict detect_convergence(const Trace& trace,
                                      const std::vector<Vector>& test_functionals,
                                      double tail_fraction) {
  if (trace.iterates.empty()) throw std::invalid_argument("detect_convergence: no retained iterates");
  if (!(tail_fraction > 0.0) || tail_fraction > 0.5)
    throw std::invalid_argument("detect_convergence: tail fraction must lie in (0, 1/2]");

  const std::size_t count = trace.iterates.size();
  std::size_t tail_len = (std::size_t)std::ceil(tail_fraction * (double)count);
  tail_len = std::max<std::size_t>(1, std::min(tail_len, count));
  const std::size_t first = count - tail_len;

  const double scale = 1e-6 * (1.0 + norm(trace.x0));
  const Vector origin(trace.x0.size(), 0.0);
  const Vector& ref = trace.a_ref ? *trace.a_ref : origin;

  ConvergenceVerdict verdict;

  double diameter = 0.0;
  for (std::size_t i = first; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      diameter = std::max(diameter, dist(trace.iterates[i], trace.iterates[j]));
    }
  }
  verdict.tail_diameter = diameter;
  verdict.norm_cauchy = diameter <= scale;

  double floor = dist(trace.iterates[first], ref);
  for (std::size_t i = first; i < count; ++i) floor = std::min(floor, dist(trace.iterates[i], ref));
  verdict.residual_floor = floor;

  for (const Vector& u : test_functionals) {
    double lo = inner(trace.iterates[first], u);
    double hi = lo;
    for (std::size_t i = first; i < count; ++i) {
      const double v = inner(trace.iterates[i], u);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    verdict.functional_oscillation.push_back(hi - lo);
    verdict.weak_proxy.push_back(hi - lo <= scale * norm(u));
  }
  return verdict;
}

FejerReport check_fejer(const Trace& trace, const Vector& v) {
  for (const ConvexSet& set : trace.family) {
    if (distance(set, v) > trace.tol + 1e-12)
      throw std::invalid_argument("check_fejer: point not within tol of every set");
  }
  FejerReport report;
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < trace.iterates.size(); ++i) {
    if (trace.iterate_steps[i + 1] != trace.iterate_steps[i] + 1) continue;
    worst = std::max(worst, dist(trace.iterates[i + 1], v) - dist(trace.iterates[i], v));
  }
  report.max_violation = worst;
  report.ok = worst <= 1e-9;
  return report;
}

bool ball_contained_in_all(const std::vector<ConvexSet>& family, const Vector& a,
                           double r, std::uint64_t probe_seed) {
  if (family.empty()) return false;
  const std::size_t d = a.size();

  std::vector<Vector> probes;
  probes.reserve(2 * d + 32);
  for (std::size_t k = 0; k < d; ++k) {
    probes.push_back(unit_axis(d, k));
    probes.push_back(scale(-1.0, unit_axis(d, k)));
  }
  std::mt19937_64 rng(probe_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 32; ++i) {
    Vector v(d);
    double n = 0.0;
    do {
      for (std::size_t k = 0; k < d; ++k) v[k] = gauss(rng);
      n = norm(v);
    } while (n == 0.0);
    probes.push_back(scale(1.0 / n, v));
  }

  for (const ConvexSet& set : family) {
    if (!contains_ball(set, a, r)) return false;
    for (const Vector& dir : probes) {
      if (!contains(set, axpy(r, dir, a))) return false;
    }
  }
  return true;
}

}  // namespace remoteproj

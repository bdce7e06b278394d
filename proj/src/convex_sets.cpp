#include "remoteproj/convex_sets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace remoteproj {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kOrthoTol = 1e-10;

void require_finite(const Vector& v, const char* what) {
  if (!is_finite(v)) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

Vector checked_unit(Vector v, const char* what) {
  require_finite(v, what);
  const double n = norm(v);
  if (std::abs(n - 1.0) > kUnitTol) {
    throw std::invalid_argument(std::string(what) + ": not unit norm (|v| = " +
                                std::to_string(n) + ")");
  }
  // renormalize only genuinely sloppy inputs; an already-unit vector must
  // pass through bit-identically so serialized sets reload exactly
  if (std::abs(n - 1.0) > 1e-14) return scale(1.0 / n, std::move(v));
  return v;
}

double clamp(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

}  // namespace

std::string to_string(SetKind kind) {
  switch (kind) {
    case SetKind::Hyperplane: return "hyperplane";
    case SetKind::AffineHyperplane: return "affine_hyperplane";
    case SetKind::Halfspace: return "halfspace";
    case SetKind::Slab: return "slab";
    case SetKind::Ball: return "ball";
    case SetKind::Line: return "line";
    case SetKind::Subspace: return "subspace";
    case SetKind::Box: return "box";
  }
  throw std::logic_error("to_string(SetKind): bad enum");
}

SetKind set_kind_from_string(const std::string& s) {
  if (s == "hyperplane") return SetKind::Hyperplane;
  if (s == "affine_hyperplane") return SetKind::AffineHyperplane;
  if (s == "halfspace") return SetKind::Halfspace;
  if (s == "slab") return SetKind::Slab;
  if (s == "ball") return SetKind::Ball;
  if (s == "line") return SetKind::Line;
  if (s == "subspace") return SetKind::Subspace;
  if (s == "box") return SetKind::Box;
  throw std::invalid_argument("unknown set kind: " + s);
}

std::size_t ConvexSet::dim() const {
  switch (kind) {
    case SetKind::Hyperplane:
    case SetKind::AffineHyperplane:
    case SetKind::Halfspace:
    case SetKind::Slab: return normal.size();
    case SetKind::Ball: return center.size();
    case SetKind::Line: return direction.size();
    case SetKind::Subspace: return basis.empty() ? 0 : basis.front().size();
    case SetKind::Box: return box_lower.size();
  }
  throw std::logic_error("ConvexSet::dim: bad enum");
}

ConvexSet ConvexSet::hyperplane(Vector g) {
  ConvexSet s;
  s.kind = SetKind::Hyperplane;
  s.normal = checked_unit(std::move(g), "hyperplane normal");
  return s;
}

ConvexSet ConvexSet::affine_hyperplane(Vector g, double c) {
  ConvexSet s;
  s.kind = SetKind::AffineHyperplane;
  s.normal = checked_unit(std::move(g), "affine hyperplane normal");
  if (!std::isfinite(c)) throw std::invalid_argument("affine hyperplane: non-finite offset");
  s.offset = c;
  return s;
}

ConvexSet ConvexSet::halfspace(Vector g, double c) {
  ConvexSet s;
  s.kind = SetKind::Halfspace;
  s.normal = checked_unit(std::move(g), "halfspace normal");
  if (!std::isfinite(c)) throw std::invalid_argument("halfspace: non-finite offset");
  s.offset = c;
  return s;
}

ConvexSet ConvexSet::slab(Vector g, double lo, double hi) {
  ConvexSet s;
  s.kind = SetKind::Slab;
  s.normal = checked_unit(std::move(g), "slab normal");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("slab: non-finite bounds");
  if (lo > hi) throw std::invalid_argument("slab: lower bound exceeds upper bound");
  s.lower = lo;
  s.upper = hi;
  return s;
}

ConvexSet ConvexSet::ball(Vector a, double r) {
  ConvexSet s;
  s.kind = SetKind::Ball;
  require_finite(a, "ball center");
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("ball: radius must be positive");
  s.center = std::move(a);
  s.radius = r;
  return s;
}

ConvexSet ConvexSet::line(Vector v) {
  ConvexSet s;
  s.kind = SetKind::Line;
  s.direction = checked_unit(std::move(v), "line direction");
  return s;
}

ConvexSet ConvexSet::subspace(std::vector<Vector> orthonormal_basis) {
  ConvexSet s;
  s.kind = SetKind::Subspace;
  if (orthonormal_basis.empty()) throw std::invalid_argument("subspace: empty basis");
  const std::size_t d = orthonormal_basis.front().size();
  for (std::size_t i = 0; i < orthonormal_basis.size(); ++i) {
    require_finite(orthonormal_basis[i], "subspace basis");
    if (orthonormal_basis[i].size() != d)
      throw std::invalid_argument("subspace: inconsistent basis dimensions");
    for (std::size_t j = 0; j <= i; ++j) {
      const double ip = inner(orthonormal_basis[i], orthonormal_basis[j]);
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - want) > kOrthoTol)
        throw std::invalid_argument("subspace: basis not orthonormal");
    }
  }
  s.basis = std::move(orthonormal_basis);
  return s;
}

ConvexSet ConvexSet::box(Vector lo, Vector hi) {
  ConvexSet s;
  s.kind = SetKind::Box;
  require_finite(lo, "box bounds");
  require_finite(hi, "box bounds");
  if (lo.size() != hi.size()) throw std::invalid_argument("box: bound dimension mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("box: lower bound exceeds upper bound");
  }
  s.box_lower = std::move(lo);
  s.box_upper = std::move(hi);
  return s;
}

namespace {

void require_dim(const ConvexSet& set, const Vector& x) {
  if (set.dim() != x.size())
    throw std::invalid_argument("set/point dimension mismatch (" +
                                std::to_string(set.dim()) + " vs " +
                                std::to_string(x.size()) + ")");
}

}  // namespace

Vector project(const ConvexSet& set, const Vector& x) {
  require_dim(set, x);
  switch (set.kind) {
    case SetKind::Hyperplane: {
      const double s = inner(x, set.normal);
      return axpy(-s, set.normal, x);
    }
    case SetKind::AffineHyperplane: {
      const double s = inner(x, set.normal);
      return axpy(set.offset - s, set.normal, x);
    }
    case SetKind::Halfspace: {
      const double s = inner(x, set.normal);
      if (s <= set.offset) return x;
      return axpy(set.offset - s, set.normal, x);
    }
    case SetKind::Slab: {
      const double s = inner(x, set.normal);
      const double c = clamp(s, set.lower, set.upper);
      if (c == s) return x;
      return axpy(c - s, set.normal, x);
    }
    case SetKind::Ball: {
      const Vector d = sub(x, set.center);
      const double n = norm(d);
      if (n <= set.radius) return x;
      return axpy(set.radius / n, d, set.center);
    }
    case SetKind::Line: {
      const double s = inner(x, set.direction);
      return scale(s, set.direction);
    }
    case SetKind::Subspace: {
      Vector p(x.size(), 0.0);
      for (const Vector& b : set.basis) {
        const double s = inner(x, b);
        p = axpy(s, b, std::move(p));
      }
      return p;
    }
    case SetKind::Box: {
      Vector p(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        p[i] = clamp(x[i], set.box_lower[i], set.box_upper[i]);
      return p;
    }
  }
  throw std::logic_error("project: bad enum");
}

double distance(const ConvexSet& set, const Vector& x) {
  require_dim(set, x);
  switch (set.kind) {
    case SetKind::Hyperplane: return std::abs(inner(x, set.normal));
    case SetKind::AffineHyperplane: return std::abs(inner(x, set.normal) - set.offset);
    case SetKind::Halfspace: return std::max(0.0, inner(x, set.normal) - set.offset);
    case SetKind::Slab: {
      const double s = inner(x, set.normal);
      return std::max({0.0, set.lower - s, s - set.upper});
    }
    case SetKind::Ball: return std::max(0.0, dist(x, set.center) - set.radius);
    case SetKind::Line:
    case SetKind::Subspace:
    case SetKind::Box: return dist(x, project(set, x));
  }
  throw std::logic_error("distance: bad enum");
}

bool contains(const ConvexSet& set, const Vector& x) {
  return distance(set, x) <= 1e-9 * (1.0 + norm(x));
}

bool contains_ball(const ConvexSet& set, const Vector& a, double r) {
  require_dim(set, a);
  if (!(r > 0.0)) throw std::invalid_argument("contains_ball: radius must be positive");
  switch (set.kind) {
    case SetKind::Hyperplane:
    case SetKind::AffineHyperplane:
    case SetKind::Line:
    case SetKind::Subspace:
      // flats have empty interior whenever codimension is positive
      return set.kind == SetKind::Subspace && set.basis.size() == set.dim();
    case SetKind::Halfspace: return inner(a, set.normal) + r <= set.offset;
    case SetKind::Slab: {
      const double s = inner(a, set.normal);
      return s - r >= set.lower && s + r <= set.upper;
    }
    case SetKind::Ball: return dist(a, set.center) + r <= set.radius;
    case SetKind::Box: {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] - r < set.box_lower[i] || a[i] + r > set.box_upper[i]) return false;
      }
      return true;
    }
  }
  throw std::logic_error("contains_ball: bad enum");
}

QuasiSymmetryReport estimate_quasi_symmetry(const ConvexSet& set, const Vector& a,
                                            double r, int sample_count,
                                            std::uint64_t seed) {
  require_dim(set, a);
  if (!(r > 0.0)) throw std::invalid_argument("estimate_quasi_symmetry: radius must be positive");
  if (sample_count <= 0) throw std::invalid_argument("estimate_quasi_symmetry: sample_count must be positive");
  if (!contains(set, a)) throw std::invalid_argument("estimate_quasi_symmetry: center not in the set");

  const std::size_t d = a.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  auto random_dir = [&]() {
    Vector v(d);
    double n = 0.0;
    do {
      for (std::size_t i = 0; i < d; ++i) v[i] = gauss(rng);
      n = norm(v);
    } while (n == 0.0);
    return scale(1.0 / n, v);
  };

  // Interior candidates: uniform in B(a,r), kept when they land in the set.
  // Boundary candidates: exterior points projected back, kept when the
  // projection stays inside B(a,r).
  std::vector<Vector> samples;
  const int max_attempts = 50 * sample_count;
  for (int attempt = 0; attempt < max_attempts && (int)samples.size() < sample_count; ++attempt) {
    Vector dir = random_dir();
    if (attempt % 2 == 0) {
      const double rho = r * std::pow(unif(rng), 1.0 / (double)d);
      Vector candidate = axpy(rho, dir, a);
      if (contains(set, candidate)) samples.push_back(std::move(candidate));
    } else {
      const double rho = r * (1.0 + 2.0 * unif(rng));
      Vector exterior = axpy(rho, dir, a);
      Vector candidate = project(set, exterior);
      if (dist(candidate, a) <= r) samples.push_back(std::move(candidate));
    }
  }
  if (samples.empty()) throw std::runtime_error("estimate_quasi_symmetry: no samples found");

  // Membership of the reflected point, at tolerance relative to the
  // reflection magnitude; an absolute tolerance would accept any factor
  // below it and defeat the search.
  auto reflects = [&](const Vector& x, double theta) {
    const Vector offset = sub(x, a);
    const Vector reflected = axpy(-theta, offset, a);
    return distance(set, reflected) <= 1e-9 * theta * norm(offset) + 1e-15;
  };

  QuasiSymmetryReport report;
  report.center = a;
  report.radius = r;
  report.samples = (int)samples.size();

  double theta = 1.0;
  for (int level = 0; level <= 30; ++level, theta *= 0.5) {
    bool all_ok = true;
    for (const Vector& x : samples) {
      if (!reflects(x, theta)) {
        all_ok = false;
        break;
      }
    }
    if (all_ok) {
      report.theta = theta;
      return report;
    }
  }

  // even the grid floor failed: report a witness
  const double floor_theta = std::pow(0.5, 30);
  for (const Vector& x : samples) {
    if (!reflects(x, floor_theta)) {
      report.witness = x;
      break;
    }
  }
  return report;
}

}  // namespace remoteproj

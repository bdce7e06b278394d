#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "remoteproj/vec.hpp"

namespace remoteproj {

enum class SetKind {
  Hyperplane,        // {y : <y,g> = 0}, unit normal g
  AffineHyperplane,  // {y : <y,g> = c}
  Halfspace,         // {y : <y,g> <= c}
  Slab,              // {y : lo <= <y,g> <= hi}
  Ball,              // {y : |y - center| <= radius}
  Line,              // span{direction}, unit direction
  Subspace,          // span of an orthonormal basis
  Box,               // {y : lo_i <= y_i <= hi_i}
};

std::string to_string(SetKind kind);
SetKind set_kind_from_string(const std::string& s);

/// A closed convex set with exact projection and distance oracles.
/// Construct through the named factories; they validate parameters and
/// renormalize declared unit vectors (accepted when within 1e-12 of unit
/// norm). Instances are immutable value types.
struct ConvexSet {
  SetKind kind{SetKind::Hyperplane};

  Vector normal;      // Hyperplane/AffineHyperplane/Halfspace/Slab
  double offset{0.0};  // AffineHyperplane/Halfspace
  double lower{0.0};   // Slab
  double upper{0.0};   // Slab
  Vector center;       // Ball
  double radius{0.0};  // Ball
  Vector direction;    // Line
  std::vector<Vector> basis;  // Subspace
  Vector box_lower;    // Box
  Vector box_upper;    // Box

  std::size_t dim() const;

  static ConvexSet hyperplane(Vector g);
  static ConvexSet affine_hyperplane(Vector g, double c);
  static ConvexSet halfspace(Vector g, double c);
  static ConvexSet slab(Vector g, double lo, double hi);
  static ConvexSet ball(Vector a, double r);
  static ConvexSet line(Vector v);
  static ConvexSet subspace(std::vector<Vector> orthonormal_basis);
  static ConvexSet box(Vector lo, Vector hi);
};

/// Nearest point of the set. Closed form for every kind.
Vector project(const ConvexSet& set, const Vector& x);

/// |x - project(set, x)|, via per-kind closed forms where they are exact.
double distance(const ConvexSet& set, const Vector& x);

/// Membership at scale-aware tolerance: distance <= 1e-9 * (1 + |x|).
bool contains(const ConvexSet& set, const Vector& x);

/// Closed-form certificate that B(a, r) is a subset of the set.
/// Flat kinds (hyperplane, line, subspace, affine hyperplane) can never
/// contain a ball of positive radius.
bool contains_ball(const ConvexSet& set, const Vector& a, double r);

struct QuasiSymmetryReport {
  Vector center;
  double radius{0.0};
  // Largest grid factor theta with: every sampled x in C ∩ B(a,r) has
  // a - theta*(x-a) in C. Empty means even the grid floor 2^-30 failed;
  // `witness` then holds a violating sample.
  std::optional<double> theta;
  std::optional<Vector> witness;
  int samples{0};
};

/// Samples C ∩ B(a,r) (interior hits by rejection, boundary points by
/// projecting exterior samples) and searches the geometric grid
/// {1, 1/2, ..., 2^-30} for a reflection factor that maps every sample
/// back into the set. The reflected-point membership test is relative to
/// the reflection magnitude, so arbitrarily small factors cannot pass on
/// tolerance alone.
///
/// Certifies symmetry only on samples. A set where every point x admits
/// some factor delta(x) > 0 with a - delta(x)*(x - a) in the set in fact
/// admits a uniform factor per radius; the estimator does not decide
/// that, it only reports the sampled grid value.
QuasiSymmetryReport estimate_quasi_symmetry(const ConvexSet& set, const Vector& a,
                                            double r, int sample_count,
                                            std::uint64_t seed);

}  // namespace remoteproj

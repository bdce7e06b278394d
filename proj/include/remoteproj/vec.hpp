#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace remoteproj {

// Dense coordinate vector of a finite-dimensional real inner-product space.
// All arithmetic is plain double; comparison tolerances are the callers'
// business.
using Vector = std::vector<double>;

double inner(const Vector& u, const Vector& v);
double norm_sq(const Vector& v);
double norm(const Vector& v);

// alpha*x + y
Vector axpy(double alpha, const Vector& x, const Vector& y);

Vector add(const Vector& u, const Vector& v);
Vector sub(const Vector& u, const Vector& v);
Vector scale(double alpha, const Vector& v);

double dist(const Vector& u, const Vector& v);
double dist_sq(const Vector& u, const Vector& v);

bool is_finite(const Vector& v);

// k-th standard basis vector of the given dimension
Vector unit_axis(std::size_t dim, std::size_t k);

// v / |v|; throws if |v| == 0
Vector normalized(const Vector& v);

}  // namespace remoteproj

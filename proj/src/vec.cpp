#include "remoteproj/vec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace remoteproj {

namespace {

void require_same_dim(const Vector& u, const Vector& v, const char* op) {
  if (u.size() != v.size()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()) + ")");
  }
}

}  // namespace

double inner(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm_sq(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double norm(const Vector& v) { return std::sqrt(norm_sq(v)); }

Vector axpy(double alpha, const Vector& x, const Vector& y) {
  require_same_dim(x, y, "axpy");
  Vector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = alpha * x[i] + y[i];
  return out;
}

Vector add(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "add");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

Vector sub(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "sub");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

Vector scale(double alpha, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = alpha * v[i];
  return out;
}

double dist_sq(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "dist");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    s += d * d;
  }
  return s;
}

double dist(const Vector& u, const Vector& v) { return std::sqrt(dist_sq(u, v)); }

bool is_finite(const Vector& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Vector unit_axis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw std::invalid_argument("unit_axis: index out of range");
  Vector e(dim, 0.0);
  e[k] = 1.0;
  return e;
}

Vector normalized(const Vector& v) {
  const double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
  return scale(1.0 / n, v);
}

}  // namespace remoteproj

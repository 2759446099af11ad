#pragma once

#include "pbo/types.hpp"

#include <cmath>
#include <functional>
#include <initializer_list>
#include <random>

namespace pbo::testing {

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

/// Small seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Vector point(Eigen::Index n, double lo = -1.0, double hi = 1.0) {
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = uniform(lo, hi);
    return x;
  }

  /// Points with pairwise distance at least min_dist.
  PointSet distinct_points(int count, Eigen::Index n, double min_dist = 1e-3, double lo = -1.0, double hi = 1.0) {
    PointSet pts;
    while (static_cast<int>(pts.size()) < count) {
      Vector p = point(n, lo, hi);
      bool ok = true;
      for (const auto& q : pts) ok = ok && (p - q).norm() >= min_dist;
      if (ok) pts.push_back(std::move(p));
    }
    return pts;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Vector central_difference(const std::function<double(const Vector&)>& f, const Vector& x, double h = 1e-6) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

/// |a - b| / max(1, |b|) in the infinity norm; absolute near zero, relative otherwise.
inline double rel_error(const Vector& a, const Vector& b) {
  return (a - b).lpNorm<Eigen::Infinity>() / std::max(1e-3, b.lpNorm<Eigen::Infinity>());
}

}  // namespace pbo::testing

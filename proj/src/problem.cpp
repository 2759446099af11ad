#include "pbo/problem.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace pbo {

ConstraintSet::ConstraintSet(Vector l, Vector u, VectorFunction g_ineq, VectorFunction g_eq)
    : lower(std::move(l)), upper(std::move(u)), ineq(std::move(g_ineq)), eq(std::move(g_eq)) {
  validate();
}

void ConstraintSet::validate() const {
  if (lower.size() < 1) throw InputError("constraint set: dimension must be at least 1");
  if (lower.size() != upper.size()) throw InputError("constraint set: lower/upper size mismatch");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw InputError("constraint set: lower bound exceeds upper bound at index " + std::to_string(i));
    }
  }
}

bool is_feasible(const ConstraintSet& c, const Vector& x, double tol_eq) {
  require_dim(x, c.dim(), "is_feasible");
  if ((x.array() < c.lower.array()).any() || (x.array() > c.upper.array()).any()) return false;
  if (c.ineq) {
    const Vector g = c.ineq(x);
    if ((g.array() > 0.0).any()) return false;
  }
  if (c.eq) {
    const Vector h = c.eq(x);
    if ((h.array().abs() > tol_eq).any()) return false;
  }
  return true;
}

double constraint_violation(const ConstraintSet& c, const Vector& x) {
  double v = 0.0;
  if (c.ineq) v += c.ineq(x).array().max(0.0).square().sum();
  if (c.eq) v += c.eq(x).squaredNorm();
  return v;
}

PointSet latin_hypercube(const Vector& lower, const Vector& upper, int count, std::uint64_t seed) {
  if (count < 2) throw InputError("latin_hypercube: count must be at least 2");
  if (lower.size() != upper.size() || lower.size() < 1) {
    throw InputError("latin_hypercube: bad bounds");
  }
  const auto n = lower.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  PointSet points(static_cast<std::size_t>(count), Vector(n));
  std::vector<int> strata(static_cast<std::size_t>(count));
  for (Eigen::Index d = 0; d < n; ++d) {
    std::iota(strata.begin(), strata.end(), 0);
    std::shuffle(strata.begin(), strata.end(), rng);
    const double width = (upper[d] - lower[d]) / count;
    for (int i = 0; i < count; ++i) {
      // Keep the draw strictly inside [stratum, stratum + 1).
      double t = unit(rng);
      if (t >= 1.0) t = std::nextafter(1.0, 0.0);
      double v = lower[d] + (strata[static_cast<std::size_t>(i)] + t) * width;
      points[static_cast<std::size_t>(i)][d] = std::min(v, upper[d]);
    }
  }
  return points;
}

AffineRescaler::AffineRescaler(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) throw InputError("rescaler: bound size mismatch");
  const Vector width = upper_ - lower_;
  scale_ = width.cwiseInverse() * 2.0;
  offset_ = -(upper_ + lower_).cwiseQuotient(width);
}

Vector AffineRescaler::forward(const Vector& x) const {
  require_dim(x, scale_.size(), "rescaler forward");
  return scale_.cwiseProduct(x) + offset_;
}

Vector AffineRescaler::inverse(const Vector& y) const {
  require_dim(y, scale_.size(), "rescaler inverse");
  Vector x = (y - offset_).cwiseQuotient(scale_);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (y[i] >= -1.0 && y[i] <= 1.0) x[i] = std::clamp(x[i], lower_[i], upper_[i]);
  }
  return x;
}

AffineRescaler make_rescaler(const ConstraintSet& c) {
  c.validate();
  const Vector width = c.upper - c.lower;
  for (Eigen::Index i = 0; i < width.size(); ++i) {
    if (!(width[i] > 0.0)) {
      throw DomainError("make_rescaler: degenerate dimension " + std::to_string(i) + " (lower == upper)");
    }
  }
  return AffineRescaler(c.lower, c.upper);
}

ConstraintSet rescaled_constraints(const ConstraintSet& c, const AffineRescaler& r) {
  ConstraintSet out;
  out.lower = Vector::Constant(c.dim(), -1.0);
  out.upper = Vector::Constant(c.dim(), 1.0);
  if (c.ineq) out.ineq = [g = c.ineq, r](const Vector& y) { return g(r.inverse(y)); };
  if (c.eq) out.eq = [h = c.eq, r](const Vector& y) { return h(r.inverse(y)); };
  return out;
}

}  // namespace pbo

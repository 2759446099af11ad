#pragma once

#include "pbo/types.hpp"

#include <cstdint>
#include <functional>

namespace pbo {

using VectorFunction = std::function<Vector(const Vector&)>;

inline constexpr double kDefaultEqualityTolerance = 1e-8;

/// Feasible set: box bounds plus optional known inequality (g(x) <= 0) and
/// equality (h(x) = 0) constraint functions.
struct ConstraintSet {
  Vector lower;
  Vector upper;
  VectorFunction ineq;  // empty => no inequality constraints
  VectorFunction eq;    // empty => no equality constraints

  ConstraintSet() = default;
  ConstraintSet(Vector l, Vector u, VectorFunction g_ineq = {}, VectorFunction g_eq = {});

  Eigen::Index dim() const noexcept { return lower.size(); }
  bool has_general_constraints() const noexcept { return static_cast<bool>(ineq) || static_cast<bool>(eq); }

  /// Throws InputError unless l <= u component-wise and n >= 1.
  void validate() const;
};

bool is_feasible(const ConstraintSet& c, const Vector& x, double tol_eq = kDefaultEqualityTolerance);

/// Squared-violation measure of the general constraints only:
/// sum max(0, g_i)^2 + sum h_j^2. Zero when there are none.
double constraint_violation(const ConstraintSet& c, const Vector& x);

/// Latin hypercube design in [lower, upper]: one uniformly drawn point per
/// stratum and an independent random permutation of strata per dimension.
PointSet latin_hypercube(const Vector& lower, const Vector& upper, int count, std::uint64_t seed);

/// Affine map of the box [l, u] onto [-1, 1]^n. The inverse sends points of
/// [-1, 1]^n back inside [l, u] exactly, without rounding past the bounds.
class AffineRescaler {
 public:
  AffineRescaler() = default;
  AffineRescaler(Vector lower, Vector upper);

  Vector forward(const Vector& x) const;
  Vector inverse(const Vector& y) const;

  const Vector& scale() const noexcept { return scale_; }
  const Vector& offset() const noexcept { return offset_; }
  Eigen::Index dim() const noexcept { return scale_.size(); }

 private:
  Vector lower_;
  Vector upper_;
  Vector scale_;
  Vector offset_;
};

/// Requires u > l strictly; a zero-width dimension raises DomainError.
AffineRescaler make_rescaler(const ConstraintSet& c);

/// The constraint set as seen by the optimizer in rescaled coordinates:
/// box [-1, 1]^n with general constraints evaluated through the inverse map.
ConstraintSet rescaled_constraints(const ConstraintSet& c, const AffineRescaler& r);

}  // namespace pbo

#pragma once

#include "pbo/problem.hpp"

#include <cstdint>
#include <functional>

namespace pbo {

using ScalarFunction = std::function<double(const Vector&)>;
using GradientFunction = std::function<Vector(const Vector&)>;

struct PsoConfig {
  int swarm_size = 30;
  int max_iters = 200;
  double inertia = 0.729;
  double cognitive = 1.49;
  double social = 1.49;
  std::uint64_t seed = 0;
  double penalty_weight = 1e6;

  /// swarm max(30, 10n), 200n iterations.
  static PsoConfig defaults_for(Eigen::Index n, std::uint64_t seed = 0);
};

struct InnerResult {
  Vector x;
  double value = 0.0;
  bool feasible = true;
  /// Global-best penalized value after each swarm iteration (PSO only).
  std::vector<double> trace;
};

/// Global-best particle swarm over the box of `constraint`. General
/// constraints enter through a quadratic penalty; `value` is the
/// unpenalized objective at the returned point. The best point passing
/// is_feasible is returned when there is one, otherwise the best penalized
/// point with `feasible` cleared.
InnerResult minimize_acquisition(const ScalarFunction& objective, const ConstraintSet& constraint,
                                 const PsoConfig& cfg);

/// Projected gradient descent with backtracking from each start; returns
/// the best endpoint. Never worse than the best (projected) start.
InnerResult multistart_refine(const ScalarFunction& objective, const GradientFunction& gradient,
                              const PointSet& starts, const Vector& lower, const Vector& upper,
                              int max_iters = 200);

}  // namespace pbo

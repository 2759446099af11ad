#pragma once

#include "pbo/types.hpp"

namespace pbo {

inline constexpr double kCoincidenceTol = 1e-12;

/// Sample set over which the inverse distance weighting terms are formed.
struct IdwContext {
  PointSet samples;
  double coincidence_tol = kCoincidenceTol;

  int size() const noexcept { return static_cast<int>(samples.size()); }
};

/// 1 / |x - x_i|^2. Throws DomainError when x coincides with sample i.
double idw_weight(const IdwContext& ctx, int i, const Vector& x);

/// Index of a sample within coincidence_tol of x, or -1.
int coincident_sample(const IdwContext& ctx, const Vector& x);

/// z(x) = -(2/pi) atan(1 / sum_i w_i(x)); exactly 0 on the samples.
double idw_distance(const IdwContext& ctx, const Vector& x);

/// Analytic gradient of idw_distance; the zero vector on the samples.
Vector idw_distance_gradient(const IdwContext& ctx, const Vector& x);

/// Exploration term whose weighting between a best-relative part and the
/// plain arctan term shifts with the fraction N / n_max of budget used.
double idw_distance_cglisp(const IdwContext& ctx, const Vector& x, int best_index, int n_max);

}  // namespace pbo

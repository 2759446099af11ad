#pragma once

#include "pbo/qp.hpp"
#include "pbo/radial.hpp"
#include "pbo/types.hpp"

#include <utility>
#include <vector>

namespace pbo {

/// Samples X, outcomes B and index pairs S of a preference-based run.
/// Pair h compares samples[pairs[h].first] against samples[pairs[h].second]
/// and outcomes[h] is the answer of the preference function on that pair.
struct PreferenceDataset {
  PointSet samples;
  std::vector<int> outcomes;
  std::vector<std::pair<int, int>> pairs;
  int best_index = 0;

  int num_samples() const noexcept { return static_cast<int>(samples.size()); }
  int num_preferences() const noexcept { return static_cast<int>(outcomes.size()); }

  /// Checks index ranges, outcome values and sample dimensions.
  /// Throws InputError on the first violation.
  void validate() const;
};

struct RbfSurrogate {
  RadialKind kind = RadialKind::InverseQuadratic;
  double epsilon = 1.0;
  PointSet centers;
  Vector beta;
};

/// Row vector [phi(eps*|x - c_i|)]_i over the centers.
Vector basis_vector(RadialKind kind, double epsilon, const PointSet& centers, const Vector& x);

/// Symmetric N x N matrix of basis values between all centers.
Matrix kernel_matrix(RadialKind kind, double epsilon, const PointSet& centers);

double surrogate_eval(const RbfSurrogate& s, const Vector& x);

/// Analytic gradient. At a center the non-smooth kinds contribute 0.
Vector surrogate_gradient(const RbfSurrogate& s, const Vector& x);

/// Tolerance-sigma preference induced by the surrogate on (xi, xj).
int surrogate_preference(const RbfSurrogate& s, const Vector& xi, const Vector& xj, double sigma);

/// Same decision rule applied to a precomputed difference f(xi) - f(xj).
int preference_from_difference(double diff, double sigma) noexcept;

struct FitOptions {
  double best_weight = 10.0;
  double other_weight = 1.0;
  qp::Settings solver{};
};

struct FitResult {
  Vector beta;
  Vector slacks;  // one per preference
  double objective = 0.0;
  int iterations = 0;
};

/// Solves the slack-penalized program for the RBF weights:
///   min lambda/2 |beta|^2 + r' slack
/// with one linear constraint family per outcome value. r_h is
/// options.best_weight when pair h touches data.best_index, else other_weight.
FitResult fit_weights(const PreferenceDataset& data, RadialKind kind, double epsilon, double sigma, double lambda,
                      const FitOptions& options = {});

/// Lower-level entry used by LOOCV: kernel already computed and a mask of
/// preferences to include.
FitResult fit_weights_with_kernel(const PreferenceDataset& data, const Matrix& kernel, double sigma, double lambda,
                                  const std::vector<bool>& include, const FitOptions& options = {});

/// Assembles the QP in variables [beta; slack] (exposed for testing).
qp::Problem build_fit_problem(const PreferenceDataset& data, const Matrix& kernel, double sigma, double lambda,
                              const std::vector<bool>& include, const FitOptions& options = {});

RbfSurrogate make_surrogate(const PreferenceDataset& data, RadialKind kind, double epsilon, Vector beta);

/// Default LOOCV grid for the shape parameter.
const std::vector<double>& default_loocv_grid();

/// Leave-one-preference-out grid search over epsilon. Ties prefer the
/// candidate closest to current_epsilon, then the smaller value.
/// Fewer than two preferences returns current_epsilon unchanged.
double loocv_select_epsilon(const PreferenceDataset& data, RadialKind kind, const std::vector<double>& grid,
                            double sigma, double lambda, double current_epsilon, const FitOptions& options = {});

}  // namespace pbo

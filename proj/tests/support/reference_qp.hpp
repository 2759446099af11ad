#pragma once

#include <Eigen/Dense>

namespace pbo::testing {

/// Dense Mehrotra predictor-corrector interior point method for
///   min 0.5 x'Px + q'x  s.t.  l <= Ax <= u
/// Used only as an oracle against the production solver.
struct ReferenceQpResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Largest multiplier to slack ratio z/s over the bounds of each row of A.
  Eigen::VectorXd activity;
};

ReferenceQpResult reference_qp(const Eigen::MatrixXd& P, const Eigen::VectorXd& q, const Eigen::MatrixXd& A,
                               const Eigen::VectorXd& l, const Eigen::VectorXd& u, int max_iter = 200,
                               double tol = 1e-10);

}  // namespace pbo::testing

#pragma once

#include "pbo/types.hpp"

namespace pbo::qp {

/// minimize 0.5 x'Px + q'x  subject to  l <= Ax <= u   (dense data).
/// Infinite bounds are expressed with +-infinity.
struct Problem {
  Matrix P;
  Vector q;
  Matrix A;
  Vector l;
  Vector u;

  Eigen::Index num_variables() const noexcept { return q.size(); }
  Eigen::Index num_constraints() const noexcept { return A.rows(); }
};

enum class Method { InteriorPoint, Admm };

struct Settings {
  Method method = Method::InteriorPoint;
  /// Iteration cap of the ADMM method.
  int max_iter = 50000;
  int ipm_max_iter = 200;
  /// Relative KKT tolerance of the interior point method.
  double ipm_eps = 1e-11;
  /// ADMM tolerances.
  double eps_abs = 1e-8;
  double eps_rel = 1e-8;
  double rho = 0.1;
  double sigma = 1e-6;
  double alpha = 1.6;
  int check_every = 25;
  bool adaptive_rho = true;
  int scaling_iters = 10;
  bool polish = true;
  /// ADMM residual level (relative) at which polishing is first attempted.
  double polish_trigger = 1e-3;
};

enum class Status { Solved, SolvedPolished };

struct Result {
  Vector x;
  Vector y;  // constraint multipliers, y_i < 0 at active lower bounds, > 0 at upper
  double objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  Status status = Status::Solved;
};

/// Dense solver with Ruiz equilibration and active-set polishing. The
/// interior point method is the default; ADMM is kept as an alternative.
/// Throws NumericalError carrying the iteration count when the selected
/// method does not converge.
Result solve(const Problem& problem, const Settings& settings = {});

double objective(const Problem& problem, const Vector& x);

}  // namespace pbo::qp

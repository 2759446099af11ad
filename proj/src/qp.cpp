#include "pbo/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace pbo::qp {

namespace {

constexpr double kRhoMin = 1e-6;
constexpr double kRhoMax = 1e6;

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

double clip_norm(double v) { return std::clamp(v, 1e-4, 1e4); }

struct Scaling {
  Vector D;  // variable scaling
  Vector E;  // constraint scaling
  double c = 1.0;
};

struct ScaledData {
  Matrix P;
  Vector q;
  Matrix A;
  Vector l;
  Vector u;
  Scaling s;
};

ScaledData equilibrate(const Problem& p, int iters) {
  const auto n = p.num_variables();
  const auto m = p.num_constraints();
  ScaledData d{p.P, p.q, p.A, p.l, p.u, {Vector::Ones(n), Vector::Ones(m), 1.0}};

  for (int it = 0; it < iters; ++it) {
    Vector dD(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      double nrm = d.P.col(j).cwiseAbs().maxCoeff();
      if (m > 0) nrm = std::max(nrm, d.A.col(j).cwiseAbs().maxCoeff());
      dD[j] = nrm < 1e-4 ? 1.0 : 1.0 / std::sqrt(clip_norm(nrm));
    }
    Vector dE(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double nrm = d.A.row(i).cwiseAbs().maxCoeff();
      dE[i] = nrm < 1e-4 ? 1.0 : 1.0 / std::sqrt(clip_norm(nrm));
    }
    d.P = dD.asDiagonal() * d.P * dD.asDiagonal();
    d.A = dE.asDiagonal() * d.A * dD.asDiagonal();
    d.q = dD.cwiseProduct(d.q);
    d.s.D = d.s.D.cwiseProduct(dD);
    d.s.E = d.s.E.cwiseProduct(dE);

    double mean_p = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) mean_p += d.P.col(j).cwiseAbs().maxCoeff();
    mean_p /= static_cast<double>(std::max<Eigen::Index>(n, 1));
    const double cost_norm = std::max(mean_p, inf_norm(d.q));
    const double gamma = cost_norm < 1e-4 ? 1.0 : 1.0 / clip_norm(cost_norm);
    d.P *= gamma;
    d.q *= gamma;
    d.s.c *= gamma;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::isfinite(d.l[i])) d.l[i] *= d.s.E[i];
    if (std::isfinite(d.u[i])) d.u[i] *= d.s.E[i];
  }
  return d;
}

Vector project(const Vector& v, const Vector& l, const Vector& u) { return v.cwiseMax(l).cwiseMin(u); }

struct Residuals {
  double prim = 0.0;
  double dual = 0.0;
  double eps_prim = 0.0;
  double eps_dual = 0.0;
  bool converged(double scale = 1.0) const { return prim <= eps_prim * scale && dual <= eps_dual * scale; }
};

Residuals residuals(const Problem& p, const Vector& x, const Vector& z, const Vector& y, double eps_abs,
                    double eps_rel) {
  const Vector Ax = p.A * x;
  const Vector Px = p.P * x;
  const Vector Aty = p.A.transpose() * y;
  Residuals r;
  r.prim = inf_norm(Ax - z);
  r.dual = inf_norm(Px + p.q + Aty);
  r.eps_prim = eps_abs + eps_rel * std::max(inf_norm(Ax), inf_norm(z));
  r.eps_dual = eps_abs + eps_rel * std::max({inf_norm(Px), inf_norm(Aty), inf_norm(p.q)});
  return r;
}

struct Polished {
  Vector x;
  Vector y;
  double prim = 0.0;
  double dual = 0.0;
};

// Solve the equality-constrained QP on the guessed active set and accept the
// point only if it satisfies the full KKT conditions to tight tolerance.
// Active-set guess from an ADMM iterate: a bound is active when the
// distance to it is below the matching multiplier. Entries are -1 (lower),
// +1 (upper) or 0.
std::vector<int> guess_active(const Problem& p, const Vector& z, const Vector& y) {
  std::vector<int> guess(static_cast<std::size_t>(p.num_constraints()), 0);
  for (Eigen::Index i = 0; i < p.num_constraints(); ++i) {
    if (std::isfinite(p.l[i]) && (z[i] - p.l[i] < -y[i])) {
      guess[static_cast<std::size_t>(i)] = -1;
    } else if (std::isfinite(p.u[i]) && (p.u[i] - z[i] < y[i])) {
      guess[static_cast<std::size_t>(i)] = 1;
    }
  }
  return guess;
}

std::optional<Polished> polish(const Problem& p, const std::vector<int>& guess) {
  const auto n = p.num_variables();
  const auto m = p.num_constraints();
  std::vector<Eigen::Index> active;
  std::vector<double> bound;
  std::vector<int> side;  // -1 lower, +1 upper
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool low = guess[static_cast<std::size_t>(i)] < 0;
    const bool up = guess[static_cast<std::size_t>(i)] > 0;
    if (low) {
      active.push_back(i);
      bound.push_back(p.l[i]);
      side.push_back(-1);
    } else if (up) {
      active.push_back(i);
      bound.push_back(p.u[i]);
      side.push_back(+1);
    }
  }
  const auto k = static_cast<Eigen::Index>(active.size());
  Matrix Ared(k, n);
  Vector bred(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    Ared.row(r) = p.A.row(active[static_cast<std::size_t>(r)]);
    bred[r] = bound[static_cast<std::size_t>(r)];
  }

  Matrix K0 = Matrix::Zero(n + k, n + k);
  K0.topLeftCorner(n, n) = p.P;
  K0.topRightCorner(n, k) = Ared.transpose();
  K0.bottomLeftCorner(k, n) = Ared;
  constexpr double delta = 1e-9;
  Matrix Kreg = K0;
  Kreg.topLeftCorner(n, n).diagonal().array() += delta;
  Kreg.bottomRightCorner(k, k).diagonal().array() -= delta;
  const Eigen::PartialPivLU<Matrix> lu(Kreg);

  Vector rhs(n + k);
  rhs << -p.q, bred;
  Vector sol = lu.solve(rhs);
  const double rhs_scale = 1.0 + inf_norm(rhs);
  for (int it = 0; it < 50; ++it) {
    const Vector res = rhs - K0 * sol;
    if (!res.allFinite()) return std::nullopt;
    if (inf_norm(res) <= 1e-14 * rhs_scale) break;
    sol += lu.solve(res);
  }
  if (!sol.allFinite()) return std::nullopt;

  Polished out;
  out.x = sol.head(n);
  out.y = Vector::Zero(m);
  for (Eigen::Index r = 0; r < k; ++r) out.y[active[static_cast<std::size_t>(r)]] = sol[n + r];

  const Vector Ax = p.A * out.x;
  const double y_scale = 1.0 + inf_norm(out.y);
  for (Eigen::Index r = 0; r < k; ++r) {
    const double yr = sol[n + r];
    if (side[static_cast<std::size_t>(r)] < 0 && yr > 1e-9 * y_scale) return std::nullopt;
    if (side[static_cast<std::size_t>(r)] > 0 && yr < -1e-9 * y_scale) return std::nullopt;
  }
  out.prim = inf_norm(Ax - project(Ax, p.l, p.u));
  out.dual = inf_norm(p.P * out.x + p.q + p.A.transpose() * out.y);
  const double ax_scale = 1.0 + inf_norm(Ax);
  const double dual_scale = 1.0 + inf_norm(p.q) + inf_norm(p.P * out.x);
  if (out.prim > 1e-10 * ax_scale || out.dual > 1e-10 * dual_scale) return std::nullopt;
  return out;
}

}  // namespace

double objective(const Problem& problem, const Vector& x) {
  return 0.5 * x.dot(problem.P * x) + problem.q.dot(x);
}


namespace {

Result make_result(const Problem& problem, Vector x, Vector y, double prim, double dual, int iter, Status st) {
  Result res;
  res.x = std::move(x);
  res.y = std::move(y);
  res.objective = objective(problem, res.x);
  res.primal_residual = prim;
  res.dual_residual = dual;
  res.iterations = iter;
  res.status = st;
  return res;
}

double max_step_to_boundary(const Vector& v, const Vector& dv) {
  double a = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) a = std::min(a, -v[i] / dv[i]);
  }
  return a;
}

// Mehrotra predictor-corrector on the two-sided form. Each finite bound gets
// its own slack and multiplier; the Newton system is reduced to the normal
// equations in x.
Result solve_ipm(const Problem& problem, const Settings& settings) {
  const auto n = problem.num_variables();
  const auto m = problem.num_constraints();
  const ScaledData d = equilibrate(problem, settings.scaling_iters);
  const Scaling& sc = d.s;

  Vector has_l(m), has_u(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    has_l[i] = std::isfinite(d.l[i]) ? 1.0 : 0.0;
    has_u[i] = std::isfinite(d.u[i]) ? 1.0 : 0.0;
  }
  const Vector lf = d.l.cwiseProduct(has_l).unaryExpr([](double v) { return std::isfinite(v) ? v : 0.0; });
  const Vector uf = d.u.cwiseProduct(has_u).unaryExpr([](double v) { return std::isfinite(v) ? v : 0.0; });
  const double count = std::max(1.0, has_l.sum() + has_u.sum());
  std::vector<Eigen::Index> bounded;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (has_l[i] > 0.0 || has_u[i] > 0.0) bounded.push_back(i);
  }
  const auto nb = static_cast<Eigen::Index>(bounded.size());
  Matrix Ab(nb, n);
  std::vector<std::vector<Eigen::Index>> pattern(static_cast<std::size_t>(nb));
  for (Eigen::Index r = 0; r < nb; ++r) {
    Ab.row(r) = d.A.row(bounded[static_cast<std::size_t>(r)]);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (Ab(r, j) != 0.0) pattern[static_cast<std::size_t>(r)].push_back(j);
    }
  }

  Vector x = Vector::Zero(n);
  Vector Ax = d.A * x;
  Vector sl = (Ax - lf).cwiseMax(1.0).cwiseProduct(has_l) + (Vector::Ones(m) - has_l);
  Vector su = (uf - Ax).cwiseMax(1.0).cwiseProduct(has_u) + (Vector::Ones(m) - has_u);
  Vector zl = has_l;
  Vector zu = has_u;

  auto unscaled_y = [&](const Vector& ys) -> Vector { return sc.E.cwiseProduct(ys) / sc.c; };
  auto ipm_active = [&]() {
    std::vector<int> guess(static_cast<std::size_t>(m), 0);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (has_l[i] > 0.0 && zl[i] > sl[i]) {
        guess[static_cast<std::size_t>(i)] = -1;
      } else if (has_u[i] > 0.0 && zu[i] > su[i]) {
        guess[static_cast<std::size_t>(i)] = 1;
      }
    }
    return guess;
  };
  std::optional<Result> best;
  std::vector<int> failed_guess;
  double best_merit = std::numeric_limits<double>::infinity();
  int stall = 0;

  for (int iter = 1; iter <= settings.ipm_max_iter; ++iter) {
    Ax = d.A * x;
    const Vector y = zu - zl;
    const Vector rd = d.P * x + d.q + d.A.transpose() * y;
    const Vector rl = (Ax - sl - lf).cwiseProduct(has_l);
    const Vector ru = (Ax + su - uf).cwiseProduct(has_u);
    const double mu = (sl.cwiseProduct(zl).dot(has_l) + su.cwiseProduct(zu).dot(has_u)) / count;

    const Vector xu = sc.D.cwiseProduct(x);
    const Vector yu = unscaled_y(y);
    const Vector Axu = problem.A * xu;
    const Vector Pxu = problem.P * xu;
    const Vector Atyu = problem.A.transpose() * yu;
    const double prim = inf_norm(Axu - project(Axu, problem.l, problem.u));
    const double dual = inf_norm(Pxu + problem.q + Atyu);
    const double eps_p = settings.ipm_eps * (1.0 + inf_norm(Axu));
    const double eps_d = settings.ipm_eps * (1.0 + std::max({inf_norm(Pxu), inf_norm(Atyu), inf_norm(problem.q)}));
    const double gap = mu / sc.c;
    if (prim <= eps_p && dual <= eps_d && gap <= eps_d) {
      if (settings.polish) {
        if (auto pol = polish(problem, ipm_active())) {
          return make_result(problem, std::move(pol->x), std::move(pol->y), pol->prim, pol->dual, iter,
                             Status::SolvedPolished);
        }
      }
      return make_result(problem, xu, yu, prim, dual, iter, Status::Solved);
    }
    // Near the end the dual residual can stall at the accuracy of the linear
    // algebra. The active set is usually identified by then, so polishing is
    // tried early, and the best iterate meeting the standard tolerances is
    // kept as a fallback.
    if (settings.polish && gap <= 1e-6 * (1.0 + std::abs(objective(problem, xu)))) {
      // A guess that already failed would fail again.
      auto guess = ipm_active();
      if (guess != failed_guess) {
        if (auto pol = polish(problem, guess)) {
          return make_result(problem, std::move(pol->x), std::move(pol->y), pol->prim, pol->dual, iter,
                             Status::SolvedPolished);
        }
        failed_guess = std::move(guess);
      }
    }
    const Residuals loose = residuals(problem, xu, Axu, yu, settings.eps_abs, settings.eps_rel);
    const double merit = std::max({prim / eps_p, dual / eps_d, gap / eps_d});
    if (loose.converged() && gap <= loose.eps_dual && merit < best_merit) {
      best_merit = merit;
      best = make_result(problem, xu, yu, prim, dual, iter, Status::Solved);
      stall = 0;
    } else if (best && ++stall >= 10) {
      return *best;
    }

    const Vector w = zl.cwiseQuotient(sl).cwiseProduct(has_l) + zu.cwiseQuotient(su).cwiseProduct(has_u);
    // Quasi-definite augmented system [P A'; A -W^-1] over the bounded rows.
    // Eliminating the multiplier block gives the normal equations
    // P + A'WA, which are much smaller; the augmented LU is the fallback
    // when they are not numerically positive definite.
    Vector wb(nb);
    Matrix normal = d.P;
    for (Eigen::Index r = 0; r < nb; ++r) {
      wb[r] = w[bounded[static_cast<std::size_t>(r)]];
      const auto& nz = pattern[static_cast<std::size_t>(r)];
      for (Eigen::Index j : nz) {
        const double aj = wb[r] * Ab(r, j);
        for (Eigen::Index k : nz) normal(j, k) += aj * Ab(r, k);
      }
    }
    normal.diagonal().array() += 1e-12;
    const Eigen::LLT<Matrix> llt(normal);
    const bool use_normal = llt.info() == Eigen::Success;
    auto kkt_apply = [&](const Vector& v) -> Vector {
      Vector out(n + nb);
      out.head(n) = d.P * v.head(n) + Ab.transpose() * v.tail(nb);
      out.tail(nb) = Ab * v.head(n) - v.tail(nb).cwiseQuotient(wb);
      return out;
    };
    Eigen::PartialPivLU<Matrix> lu;
    if (!use_normal) {
      Matrix K(n + nb, n + nb);
      K << d.P, Ab.transpose(), Ab, Matrix((-wb.cwiseInverse()).asDiagonal());
      K.topLeftCorner(n, n).diagonal().array() += 1e-12;
      K.bottomRightCorner(nb, nb).diagonal().array() -= 1e-12;
      lu.compute(K);
    }
    auto kkt_solve = [&](const Vector& rhs) -> Vector {
      if (!use_normal) return lu.solve(rhs);
      Vector out(n + nb);
      out.head(n) = llt.solve(rhs.head(n) + Ab.transpose() * wb.cwiseProduct(rhs.tail(nb)));
      out.tail(nb) = wb.cwiseProduct(Ab * out.head(n) - rhs.tail(nb));
      return out;
    };

    // rcl, rcu are the complementarity targets s*z - sigma*mu (+ corrector).
    auto direction = [&](const Vector& rcl, const Vector& rcu, Vector& dx, Vector& dsl, Vector& dsu, Vector& dzl,
                         Vector& dzu) {
      const Vector tl = ((-rcl - zl.cwiseProduct(rl)).cwiseQuotient(sl)).cwiseProduct(has_l);
      const Vector tu = ((-rcu + zu.cwiseProduct(ru)).cwiseQuotient(su)).cwiseProduct(has_u);
      const Vector t = tu - tl;
      Vector rhs(n + nb);
      rhs.head(n) = -rd;
      for (Eigen::Index r = 0; r < nb; ++r) {
        const Eigen::Index i = bounded[static_cast<std::size_t>(r)];
        rhs[n + r] = -t[i] / w[i];
      }
      Vector sol = kkt_solve(rhs);
      for (int k = 0; k < 3; ++k) sol += kkt_solve(rhs - kkt_apply(sol));
      if (!sol.allFinite()) throw NumericalError("qp::solve: interior point step is not finite", iter);
      dx = sol.head(n);
      const Vector Adx = d.A * dx;
      dsl = (Adx + rl).cwiseProduct(has_l);
      dsu = (-Adx - ru).cwiseProduct(has_u);
      dzl = ((-rcl - zl.cwiseProduct(dsl)).cwiseQuotient(sl)).cwiseProduct(has_l);
      dzu = ((-rcu - zu.cwiseProduct(dsu)).cwiseQuotient(su)).cwiseProduct(has_u);
    };
    auto step_length = [&](const Vector& dsl, const Vector& dsu, const Vector& dzl, const Vector& dzu) {
      return std::min({max_step_to_boundary(sl, dsl), max_step_to_boundary(su, dsu), max_step_to_boundary(zl, dzl),
                       max_step_to_boundary(zu, dzu)});
    };

    Vector dx, dsl, dsu, dzl, dzu;
    const Vector cl = sl.cwiseProduct(zl).cwiseProduct(has_l);
    const Vector cu = su.cwiseProduct(zu).cwiseProduct(has_u);
    direction(cl, cu, dx, dsl, dsu, dzl, dzu);
    const double a_aff = step_length(dsl, dsu, dzl, dzu);
    const double mu_aff = ((sl + a_aff * dsl).cwiseProduct(zl + a_aff * dzl).dot(has_l) +
                           (su + a_aff * dsu).cwiseProduct(zu + a_aff * dzu).dot(has_u)) /
                          count;
    const double centering = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);
    const Vector rcl = (cl + dsl.cwiseProduct(dzl) - Vector::Constant(m, centering * mu)).cwiseProduct(has_l);
    const Vector rcu = (cu + dsu.cwiseProduct(dzu) - Vector::Constant(m, centering * mu)).cwiseProduct(has_u);
    direction(rcl, rcu, dx, dsl, dsu, dzl, dzu);
    double a = std::min(1.0, 0.995 * step_length(dsl, dsu, dzl, dzu));
    auto mu_after = [&](double t) {
      return ((sl + t * dsl).cwiseProduct(zl + t * dzl).dot(has_l) + (su + t * dsu).cwiseProduct(zu + t * dzu).dot(has_u)) /
             count;
    };
    // Mehrotra's correction can make the complementarity grow and the method
    // cycle; backtrack until it decreases.
    while (a > 1e-10 && mu_after(a) > (1.0 - 0.01 * a) * mu) a *= 0.5;
    if (a <= 1e-10) {
      // The corrector term can make the complementarity grow for every step
      // length; the plain centered direction always reduces it.
      const double sigma = std::max(centering, 0.1);
      direction((cl - Vector::Constant(m, sigma * mu)).cwiseProduct(has_l),
                (cu - Vector::Constant(m, sigma * mu)).cwiseProduct(has_u), dx, dsl, dsu, dzl, dzu);
      a = std::min(1.0, 0.995 * step_length(dsl, dsu, dzl, dzu));
      while (a > 1e-10 && mu_after(a) > (1.0 - 0.01 * a) * mu) a *= 0.5;
    }
    x += a * dx;
    sl += a * dsl;
    su += a * dsu;
    zl += a * dzl;
    zu += a * dzu;
  }
  if (best) return *best;
  throw NumericalError("qp::solve: interior point method did not converge", settings.ipm_max_iter);
}

Result solve_admm(const Problem& problem, const Settings& settings) {
  const auto n = problem.num_variables();
  const auto m = problem.num_constraints();

  const ScaledData d = equilibrate(problem, settings.scaling_iters);
  const Scaling& s = d.s;

  double rho = settings.rho;
  const double sigma = settings.sigma;
  const double alpha = settings.alpha;

  auto factor = [&](double r) {
    Matrix K = d.P;
    K.diagonal().array() += sigma;
    K.noalias() += r * d.A.transpose() * d.A;
    return Eigen::LLT<Matrix>(K);
  };
  Eigen::LLT<Matrix> llt = factor(rho);
  if (llt.info() != Eigen::Success) throw NumericalError("qp::solve: KKT factorization failed", 0);

  Vector xs = Vector::Zero(n);
  Vector zs = project(Vector::Zero(m), d.l, d.u);
  Vector ys = Vector::Zero(m);

  auto unscaled = [&](const Vector& xv, const Vector& zv, const Vector& yv) {
    return std::tuple<Vector, Vector, Vector>(s.D.cwiseProduct(xv), zv.cwiseQuotient(s.E),
                                              s.E.cwiseProduct(yv) / s.c);
  };

  auto finish = [&](Vector x, Vector y, const Residuals& r, int iter, Status st) {
    return make_result(problem, std::move(x), std::move(y), r.prim, r.dual, iter, st);
  };

  int iter = 0;
  bool last_converged = false;
  Residuals last{};
  for (iter = 1; iter <= settings.max_iter; ++iter) {
    const Vector rhs = sigma * xs - d.q + d.A.transpose() * (rho * zs - ys);
    const Vector xt = llt.solve(rhs);
    const Vector zt = d.A * xt;
    const Vector x_new = alpha * xt + (1.0 - alpha) * xs;
    const Vector zr = alpha * zt + (1.0 - alpha) * zs;
    const Vector z_new = project(zr + ys / rho, d.l, d.u);
    ys += rho * (zr - z_new);
    xs = x_new;
    zs = z_new;

    if (iter % settings.check_every != 0 && iter != settings.max_iter) continue;

    auto [x, z, y] = unscaled(xs, zs, ys);
    last = residuals(problem, x, z, y, settings.eps_abs, settings.eps_rel);
    last_converged = last.converged();

    const bool near = last.prim <= settings.polish_trigger * std::max(1.0, inf_norm(z)) &&
                      last.dual <= settings.polish_trigger * std::max(1.0, inf_norm(problem.q));
    if (settings.polish && (near || last_converged)) {
      if (auto pol = polish(problem, guess_active(problem, z, y))) {
        Residuals pr;
        pr.prim = pol->prim;
        pr.dual = pol->dual;
        return finish(std::move(pol->x), std::move(pol->y), pr, iter, Status::SolvedPolished);
      }
    }
    if (last_converged) return finish(std::move(x), std::move(y), last, iter, Status::Solved);

    if (settings.adaptive_rho) {
      const Vector Axs = d.A * xs;
      const double prim_s = inf_norm(Axs - zs);
      const double dual_s = inf_norm(d.P * xs + d.q + d.A.transpose() * ys);
      const double prim_den = std::max({inf_norm(Axs), inf_norm(zs), 1e-12});
      const double dual_den =
          std::max({inf_norm(d.P * xs), inf_norm(d.A.transpose() * ys), inf_norm(d.q), 1e-12});
      if (prim_s > 0.0 && dual_s > 0.0) {
        double rho_new = rho * std::sqrt((prim_s / prim_den) / (dual_s / dual_den));
        rho_new = std::clamp(rho_new, kRhoMin, kRhoMax);
        if (rho_new > 5.0 * rho || rho_new < rho / 5.0) {
          rho = rho_new;
          llt = factor(rho);
          if (llt.info() != Eigen::Success) throw NumericalError("qp::solve: KKT factorization failed", iter);
        }
      }
    }
  }
  throw NumericalError("qp::solve: ADMM did not converge", settings.max_iter);
}

}  // namespace

Result solve(const Problem& problem, const Settings& settings) {
  const auto n = problem.num_variables();
  const auto m = problem.num_constraints();
  if (problem.P.rows() != n || problem.P.cols() != n || problem.A.cols() != n || problem.l.size() != m ||
      problem.u.size() != m) {
    throw InputError("qp::solve: inconsistent problem dimensions");
  }
  if ((problem.l.array() > problem.u.array()).any()) throw InputError("qp::solve: l > u");
  return settings.method == Method::InteriorPoint ? solve_ipm(problem, settings) : solve_admm(problem, settings);
}

}  // namespace pbo::qp

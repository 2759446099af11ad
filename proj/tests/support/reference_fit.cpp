#include "reference_fit.hpp"

#include "reference_qp.hpp"

#include <cmath>
#include <limits>

namespace pbo::testing {

ReferenceFit reference_fit(const std::vector<Eigen::VectorXd>& samples, const std::vector<std::pair<int, int>>& pairs,
                           const std::vector<int>& outcomes, int best, RadialKind kind, double epsilon, double sigma,
                           double lambda, int skip, double best_weight) {
  const double inf = std::numeric_limits<double>::infinity();
  const int N = static_cast<int>(samples.size());
  std::vector<int> keep;
  for (int h = 0; h < static_cast<int>(pairs.size()); ++h) {
    if (h != skip) keep.push_back(h);
  }
  const int M = static_cast<int>(keep.size());

  auto phi_row = [&](int i) {
    Eigen::VectorXd r(N);
    for (int j = 0; j < N; ++j) r[j] = radial_eval(kind, epsilon, (samples[i] - samples[j]).norm());
    return r;
  };

  // One two-sided row per preference in f-difference space, widened by the
  // slack, plus slack >= 0. Indifference uses |d| <= sigma + s as two rows.
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> lo, hi;
  for (int k = 0; k < M; ++k) {
    const int h = keep[k];
    const Eigen::VectorXd d = phi_row(pairs[h].first) - phi_row(pairs[h].second);
    Eigen::VectorXd plus = Eigen::VectorXd::Zero(N + M);
    Eigen::VectorXd minus = Eigen::VectorXd::Zero(N + M);
    plus.head(N) = d;
    minus.head(N) = d;
    plus[N + k] = 1.0;    // d + s
    minus[N + k] = -1.0;  // d - s
    if (outcomes[h] < 0) {
      rows.push_back(minus);
      lo.push_back(-inf);
      hi.push_back(-sigma);
    } else if (outcomes[h] > 0) {
      rows.push_back(plus);
      lo.push_back(sigma);
      hi.push_back(inf);
    } else {
      rows.push_back(minus);
      lo.push_back(-inf);
      hi.push_back(sigma);
      rows.push_back(plus);
      lo.push_back(-sigma);
      hi.push_back(inf);
    }
    Eigen::VectorXd s = Eigen::VectorXd::Zero(N + M);
    s[N + k] = 1.0;
    rows.push_back(s);
    lo.push_back(0.0);
    hi.push_back(inf);
  }

  Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), N + M);
  for (std::size_t r = 0; r < rows.size(); ++r) A.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N + M, N + M);
  for (int i = 0; i < N; ++i) P(i, i) = lambda;
  Eigen::VectorXd q = Eigen::VectorXd::Zero(N + M);
  for (int k = 0; k < M; ++k) {
    const auto [a, b] = pairs[keep[k]];
    q[N + k] = (a == best || b == best) ? best_weight : 1.0;
  }
  const Eigen::Map<Eigen::VectorXd> lo_v(lo.data(), static_cast<Eigen::Index>(lo.size()));
  const Eigen::Map<Eigen::VectorXd> hi_v(hi.data(), static_cast<Eigen::Index>(hi.size()));
  auto res = reference_qp(P, q, A, lo_v, hi_v, 500, 1e-15);
  // Crossover: rows guessed active are treated as equalities and the KKT
  // system is solved directly. A candidate that is feasible and has correctly
  // signed multipliers is a certified optimum and replaces the interior point
  // iterate. Guesses come from primal distance and from the z/s ratio.
  Eigen::VectorXd x = res.x;
  bool certified = false;
  Eigen::Matrix<long double, Eigen::Dynamic, 1> xl = res.x.cast<long double>();
  const Eigen::Index n = N + M;
  Eigen::VectorXd Ax0 = A * x;
  // Returns true on a certified optimum. Otherwise `pick` is corrected in
  // place: wrongly signed multipliers leave the set, violated rows join it.
  auto try_active = [&](std::vector<bool>& pick) {
    std::vector<Eigen::Index> act;
    std::vector<double> val;
    std::vector<int> side;
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      if (!pick[static_cast<std::size_t>(r)]) continue;
      const double lo_r = lo[static_cast<std::size_t>(r)];
      const double hi_r = hi[static_cast<std::size_t>(r)];
      const bool lower = std::isfinite(lo_r) && (!std::isfinite(hi_r) || Ax0[r] - lo_r <= hi_r - Ax0[r]);
      act.push_back(r);
      val.push_back(lower ? lo_r : hi_r);
      side.push_back(lower ? -1 : 1);
    }
    const auto k = static_cast<Eigen::Index>(act.size());
    // Extended precision: the systems combine lambda ~ 1e-6 with nearly
    // singular kernel differences.
    using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    MatL KKT = MatL::Zero(n + k, n + k);
    KKT.topLeftCorner(n, n) = P.cast<long double>();
    VecL rhs(n + k);
    rhs.head(n) = -q.cast<long double>();
    for (Eigen::Index r = 0; r < k; ++r) {
      KKT.block(n + r, 0, 1, n) = A.row(act[static_cast<std::size_t>(r)]).cast<long double>();
      KKT.block(0, n + r, n, 1) = A.row(act[static_cast<std::size_t>(r)]).transpose().cast<long double>();
      rhs[n + r] = val[static_cast<std::size_t>(r)];
    }
    const auto cod = KKT.completeOrthogonalDecomposition();
    VecL sol = cod.solve(rhs);
    for (int it = 0; it < 2; ++it) sol += cod.solve(VecL(rhs - KKT * sol));
    if (!sol.allFinite() || static_cast<double>((KKT * sol - rhs).template lpNorm<Eigen::Infinity>()) > 1e-12) {
      return false;
    }
    const VecL cand = sol.head(n);
    const VecL Ac = A.cast<long double>() * cand;
    bool ok = true;
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      const auto lo_r = static_cast<long double>(lo[static_cast<std::size_t>(r)]);
      const auto hi_r = static_cast<long double>(hi[static_cast<std::size_t>(r)]);
      if (lo_r - Ac[r] > 1e-13L || Ac[r] - hi_r > 1e-13L) {
        ok = false;
        pick[static_cast<std::size_t>(r)] = true;
      }
    }
    const long double mscale = 1e-15L * (1.0L + sol.tail(k).template lpNorm<Eigen::Infinity>());
    for (Eigen::Index r = 0; r < k; ++r) {
      if (side[static_cast<std::size_t>(r)] * sol[n + r] < -mscale) {
        ok = false;
        pick[static_cast<std::size_t>(act[static_cast<std::size_t>(r)])] = false;
      }
    }
    if (!ok) return false;
    x = cand.cast<double>();
    xl = cand;
    return true;
  };
  auto correct_active = [&](std::vector<bool> pick) {
    for (int round = 0; round < 20; ++round) {
      const auto before = pick;
      if (try_active(pick)) return true;
      if (pick == before) return false;
    }
    return false;
  };
  // Iterates stopped at different accuracies expose different active sets.
  for (double tol : {1e-15, 1e-12, 1e-10}) {
    if (tol != 1e-15) {
      res = reference_qp(P, q, A, lo_v, hi_v, 500, tol);
      Ax0 = A * res.x;
    }
    for (double thr = 1e-9; thr <= 1e-1 && !certified; thr *= 10.0) {
      std::vector<bool> pick(static_cast<std::size_t>(A.rows()), false);
      for (Eigen::Index r = 0; r < A.rows(); ++r) {
        const double lo_r = lo[static_cast<std::size_t>(r)];
        const double hi_r = hi[static_cast<std::size_t>(r)];
        pick[static_cast<std::size_t>(r)] = (std::isfinite(lo_r) && Ax0[r] - lo_r <= thr * (1.0 + std::abs(lo_r))) ||
                                            (std::isfinite(hi_r) && hi_r - Ax0[r] <= thr * (1.0 + std::abs(hi_r)));
      }
      certified = correct_active(pick);
    }
    for (double tau = 1e-6; tau <= 1e6 && !certified; tau *= 10.0) {
      std::vector<bool> pick(static_cast<std::size_t>(A.rows()), false);
      for (Eigen::Index r = 0; r < A.rows(); ++r) pick[static_cast<std::size_t>(r)] = res.activity[r] > tau;
      certified = correct_active(pick);
    }
    if (certified) break;
  }

  ReferenceFit out;
  out.beta = x.head(N);
  out.slacks = x.tail(M);
  out.objective = static_cast<double>(0.5L * xl.dot(P.cast<long double>() * xl) + q.cast<long double>().dot(xl));
  out.converged = certified;
  return out;
}

}  // namespace pbo::testing

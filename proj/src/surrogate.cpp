#include "pbo/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pbo {

void PreferenceDataset::validate() const {
  const int n = num_samples();
  if (outcomes.size() != pairs.size()) throw InputError("preference dataset: |B| != |S|");
  if (n > 0) {
    const auto dim = samples.front().size();
    for (const auto& x : samples) require_dim(x, dim, "preference dataset sample");
  }
  for (std::size_t h = 0; h < pairs.size(); ++h) {
    const auto [a, b] = pairs[h];
    if (a < 0 || a >= n || b < 0 || b >= n) throw InputError("preference dataset: pair index out of range");
    if (a == b) throw InputError("preference dataset: pair compares a sample with itself");
    if (outcomes[h] < -1 || outcomes[h] > 1) throw InputError("preference dataset: outcome outside {-1,0,1}");
  }
  if (n > 0 && (best_index < 0 || best_index >= n)) throw InputError("preference dataset: best index out of range");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (samples[static_cast<std::size_t>(i)] == samples[static_cast<std::size_t>(j)]) {
        throw InputError("preference dataset: samples must be distinct");
      }
    }
  }
}

Vector basis_vector(RadialKind kind, double epsilon, const PointSet& centers, const Vector& x) {
  Vector phi(static_cast<Eigen::Index>(centers.size()));
  for (std::size_t i = 0; i < centers.size(); ++i) {
    phi[static_cast<Eigen::Index>(i)] = radial_eval(kind, epsilon, (x - centers[i]).norm());
  }
  return phi;
}

Matrix kernel_matrix(RadialKind kind, double epsilon, const PointSet& centers) {
  const auto n = static_cast<Eigen::Index>(centers.size());
  Matrix K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = radial_eval(kind, epsilon, 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = radial_eval(kind, epsilon, (centers[static_cast<std::size_t>(i)] -
                                                   centers[static_cast<std::size_t>(j)]).norm());
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

double surrogate_eval(const RbfSurrogate& s, const Vector& x) {
  if (s.centers.empty()) return 0.0;
  require_dim(x, s.centers.front().size(), "surrogate_eval");
  double f = 0.0;
  for (std::size_t i = 0; i < s.centers.size(); ++i) {
    f += s.beta[static_cast<Eigen::Index>(i)] * radial_eval(s.kind, s.epsilon, (x - s.centers[i]).norm());
  }
  return f;
}

Vector surrogate_gradient(const RbfSurrogate& s, const Vector& x) {
  Vector g = Vector::Zero(x.size());
  if (s.centers.empty()) return g;
  require_dim(x, s.centers.front().size(), "surrogate_gradient");
  for (std::size_t i = 0; i < s.centers.size(); ++i) {
    const Vector d = x - s.centers[i];
    const double r = d.norm();
    if (r == 0.0) continue;
    g += (s.beta[static_cast<Eigen::Index>(i)] * radial_derivative(s.kind, s.epsilon, r) / r) * d;
  }
  return g;
}

int preference_from_difference(double diff, double sigma) noexcept {
  if (diff <= -sigma) return -1;
  if (diff >= sigma) return 1;
  return 0;
}

int surrogate_preference(const RbfSurrogate& s, const Vector& xi, const Vector& xj, double sigma) {
  if (!(sigma > 0.0)) throw InputError("surrogate_preference: sigma must be positive");
  return preference_from_difference(surrogate_eval(s, xi) - surrogate_eval(s, xj), sigma);
}

namespace {

void check_fit_args(double sigma, double lambda) {
  if (!(sigma > 0.0)) throw InputError("fit_weights: sigma must be positive");
  if (!(lambda >= 0.0)) throw InputError("fit_weights: lambda must be non-negative");
}

}  // namespace

qp::Problem build_fit_problem(const PreferenceDataset& data, const Matrix& kernel, double sigma, double lambda,
                              const std::vector<bool>& include, const FitOptions& options) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const auto N = static_cast<Eigen::Index>(data.num_samples());
  std::vector<int> used;
  for (int h = 0; h < data.num_preferences(); ++h) {
    if (include[static_cast<std::size_t>(h)]) used.push_back(h);
  }
  const auto M = static_cast<Eigen::Index>(used.size());

  Eigen::Index rows = M;  // slack non-negativity
  for (int h : used) rows += data.outcomes[static_cast<std::size_t>(h)] == 0 ? 2 : 1;

  qp::Problem p;
  p.P = Matrix::Zero(N + M, N + M);
  p.P.topLeftCorner(N, N).diagonal().setConstant(lambda);
  p.q = Vector::Zero(N + M);
  p.A = Matrix::Zero(rows, N + M);
  p.l = Vector::Constant(rows, -inf);
  p.u = Vector::Constant(rows, inf);

  Eigen::Index row = 0;
  for (Eigen::Index k = 0; k < M; ++k) {
    const auto h = static_cast<std::size_t>(used[static_cast<std::size_t>(k)]);
    const auto [a, b] = data.pairs[h];
    const bool touches_best = a == data.best_index || b == data.best_index;
    p.q[N + k] = touches_best ? options.best_weight : options.other_weight;
    const Vector diff = kernel.row(a) - kernel.row(b);
    const Eigen::Index s = N + k;
    switch (data.outcomes[h]) {
      case -1:
        p.A.row(row).head(N) = diff;
        p.A(row, s) = -1.0;
        p.u[row] = -sigma;
        ++row;
        break;
      case 1:
        p.A.row(row).head(N) = diff;
        p.A(row, s) = 1.0;
        p.l[row] = sigma;
        ++row;
        break;
      default:
        p.A.row(row).head(N) = diff;
        p.A(row, s) = -1.0;
        p.u[row] = sigma;
        ++row;
        p.A.row(row).head(N) = diff;
        p.A(row, s) = 1.0;
        p.l[row] = -sigma;
        ++row;
        break;
    }
  }
  for (Eigen::Index k = 0; k < M; ++k) {
    p.A(row, N + k) = 1.0;
    p.l[row] = 0.0;
    ++row;
  }
  return p;
}

namespace {

// Slack of preference h implied by beta: the smallest value satisfying its
// constraint family.
double implied_slack(const Vector& diff_row, const Vector& beta, int outcome, double sigma) {
  const double d = diff_row.dot(beta);
  switch (outcome) {
    case -1:
      return std::max(0.0, d + sigma);
    case 1:
      return std::max(0.0, sigma - d);
    default:
      return std::max(0.0, std::abs(d) - sigma);
  }
}

// For lambda > 0 the program is solved through its Lagrangian dual scaled by
// 1/lambda: min 0.5 |G't|^2 + c't  s.t. t >= 0, sum of t over the rows of
// preference h <= r_h / lambda, with rows written as g_i'beta - slack <= c_i.
// Then beta = -G't.
Vector fit_beta_dual(const PreferenceDataset& data, const Matrix& kernel, double sigma, double lambda,
                     const std::vector<int>& used, const FitOptions& options, int& iterations) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const auto N = static_cast<Eigen::Index>(data.num_samples());
  const auto M = static_cast<Eigen::Index>(used.size());
  Eigen::Index R = 0;
  for (int h : used) R += data.outcomes[static_cast<std::size_t>(h)] == 0 ? 2 : 1;

  Matrix G(R, N);
  Vector c(R);
  std::vector<Eigen::Index> group(static_cast<std::size_t>(R));
  Eigen::Index row = 0;
  for (Eigen::Index k = 0; k < M; ++k) {
    const auto h = static_cast<std::size_t>(used[static_cast<std::size_t>(k)]);
    const auto [a, b] = data.pairs[h];
    const Vector diff = kernel.row(a) - kernel.row(b);
    auto add = [&](const Vector& g, double bound) {
      G.row(row) = g.transpose();
      c[row] = bound;
      group[static_cast<std::size_t>(row)] = k;
      ++row;
    };
    switch (data.outcomes[h]) {
      case -1:
        add(diff, -sigma);
        break;
      case 1:
        add(-diff, -sigma);
        break;
      default:
        add(diff, sigma);
        add(-diff, sigma);
        break;
    }
  }

  qp::Problem p;
  p.P = G * G.transpose();
  p.q = c;
  p.A = Matrix::Zero(R + M, R);
  p.A.topRows(R).setIdentity();
  p.l = Vector::Zero(R + M);
  p.u = Vector::Constant(R + M, inf);
  for (Eigen::Index k = 0; k < M; ++k) {
    const auto [a, b] = data.pairs[static_cast<std::size_t>(used[static_cast<std::size_t>(k)])];
    const bool touches_best = a == data.best_index || b == data.best_index;
    p.l[R + k] = -inf;
    p.u[R + k] = (touches_best ? options.best_weight : options.other_weight) / lambda;
  }
  for (Eigen::Index r = 0; r < R; ++r) p.A(R + group[static_cast<std::size_t>(r)], r) = 1.0;

  const qp::Result res = qp::solve(p, options.solver);
  iterations = res.iterations;
  const Vector t = res.x.cwiseMax(0.0);
  const Vector beta = -G.transpose() * t;

  // beta = -G't loses accuracy when t is large and G is ill conditioned.
  // Recompute it from the active set: capped preferences contribute fixed
  // terms, tight rows hold with equality, and the minimum norm correction
  // comes from an orthogonal factorization of those rows.
  Vector sums = Vector::Zero(M);
  for (Eigen::Index r = 0; r < R; ++r) sums[group[static_cast<std::size_t>(r)]] += t[r];
  const double t_floor = 1e-12 * (1.0 + t.lpNorm<Eigen::Infinity>());
  Vector base = Vector::Zero(N);
  std::vector<Eigen::Index> tight;
  for (Eigen::Index r = 0; r < R; ++r) {
    const Eigen::Index k = group[static_cast<std::size_t>(r)];
    if (sums[k] >= p.u[R + k] * (1.0 - 1e-9)) {
      base -= G.row(r).transpose() * t[r];
    } else if (t[r] > t_floor) {
      tight.push_back(r);
    }
  }
  if (tight.empty()) return beta;
  Matrix GT(static_cast<Eigen::Index>(tight.size()), N);
  Vector cT(GT.rows());
  for (Eigen::Index i = 0; i < GT.rows(); ++i) {
    GT.row(i) = G.row(tight[static_cast<std::size_t>(i)]);
    cT[i] = c[tight[static_cast<std::size_t>(i)]];
  }
  const Vector refined = base + GT.completeOrthogonalDecomposition().solve(cT - GT * base);
  auto value = [&](const Vector& b) {
    Vector worst = Vector::Zero(M);
    const Vector g = G * b - c;
    for (Eigen::Index r = 0; r < R; ++r) {
      auto& w = worst[group[static_cast<std::size_t>(r)]];
      w = std::max(w, g[r]);
    }
    return 0.5 * b.squaredNorm() + worst.dot(p.u.tail(M));
  };
  return refined.allFinite() && value(refined) <= value(beta) ? refined : beta;
}

}  // namespace

FitResult fit_weights_with_kernel(const PreferenceDataset& data, const Matrix& kernel, double sigma, double lambda,
                                  const std::vector<bool>& include, const FitOptions& options) {
  check_fit_args(sigma, lambda);
  if (include.size() != data.outcomes.size()) throw InputError("fit_weights: include mask size mismatch");
  std::vector<int> used;
  for (int h = 0; h < data.num_preferences(); ++h) {
    if (include[static_cast<std::size_t>(h)]) used.push_back(h);
  }
  if (used.empty()) throw InputError("fit_weights: at least one preference is required");
  const auto N = static_cast<Eigen::Index>(data.num_samples());

  FitResult out;
  if (lambda > 0.0) {
    out.beta = fit_beta_dual(data, kernel, sigma, lambda, used, options, out.iterations);
  } else {
    const qp::Problem p = build_fit_problem(data, kernel, sigma, lambda, include, options);
    const qp::Result r = qp::solve(p, options.solver);
    out.beta = r.x.head(N);
    out.iterations = r.iterations;
  }
  out.slacks = Vector::Zero(data.num_preferences());
  out.objective = 0.5 * lambda * out.beta.squaredNorm();
  for (int h : used) {
    const auto [a, b] = data.pairs[static_cast<std::size_t>(h)];
    const double e =
        implied_slack(kernel.row(a) - kernel.row(b), out.beta, data.outcomes[static_cast<std::size_t>(h)], sigma);
    out.slacks[h] = e;
    const bool touches_best = a == data.best_index || b == data.best_index;
    out.objective += (touches_best ? options.best_weight : options.other_weight) * e;
  }
  return out;
}

FitResult fit_weights(const PreferenceDataset& data, RadialKind kind, double epsilon, double sigma, double lambda,
                      const FitOptions& options) {
  data.validate();
  if (data.num_preferences() < 1) throw InputError("fit_weights: at least one preference is required");
  const Matrix K = kernel_matrix(kind, epsilon, data.samples);
  return fit_weights_with_kernel(data, K, sigma, lambda, std::vector<bool>(data.outcomes.size(), true), options);
}

RbfSurrogate make_surrogate(const PreferenceDataset& data, RadialKind kind, double epsilon, Vector beta) {
  if (beta.size() != data.num_samples()) throw InputError("make_surrogate: beta size mismatch");
  return RbfSurrogate{kind, epsilon, data.samples, std::move(beta)};
}

const std::vector<double>& default_loocv_grid() {
  static const std::vector<double> grid{0.1000, 0.1668, 0.2783, 0.4642, 0.7743, 1.0,
                                        1.2915, 2.1544, 3.5938, 5.9948, 10.0};
  return grid;
}

namespace {

constexpr double kLoocvBoundaryTol = 1e-9;

}  // namespace

double loocv_select_epsilon(const PreferenceDataset& data, RadialKind kind, const std::vector<double>& grid,
                            double sigma, double lambda, double current_epsilon, const FitOptions& options) {
  if (grid.empty()) throw InputError("loocv_select_epsilon: empty grid");
  for (double e : grid) {
    if (!(e > 0.0)) throw InputError("loocv_select_epsilon: grid values must be positive");
  }
  data.validate();
  const int M = data.num_preferences();
  if (M < 2) return current_epsilon;

  double best_eps = current_epsilon;
  int best_score = -1;
  for (double eps : grid) {
    const Matrix K = kernel_matrix(kind, eps, data.samples);
    std::vector<bool> include(static_cast<std::size_t>(M), true);
    int score = 0;
    for (int h = 0; h < M; ++h) {
      include[static_cast<std::size_t>(h)] = false;
      const FitResult fit = fit_weights_with_kernel(data, K, sigma, lambda, include, options);
      include[static_cast<std::size_t>(h)] = true;
      const auto [a, b] = data.pairs[static_cast<std::size_t>(h)];
      double diff = (K.row(a) - K.row(b)).dot(fit.beta);
      // Held-out pairs implied by transitivity often sit exactly on the
      // tolerance band; snap round-off onto the boundary.
      if (std::abs(std::abs(diff) - sigma) <= kLoocvBoundaryTol * sigma) diff = std::copysign(sigma, diff);
      if (preference_from_difference(diff, sigma) == data.outcomes[static_cast<std::size_t>(h)]) ++score;
    }
    const bool better = score > best_score;
    const bool tie = score == best_score;
    const double d_new = std::abs(eps - current_epsilon);
    const double d_old = std::abs(best_eps - current_epsilon);
    if (better || (tie && (d_new < d_old || (d_new == d_old && eps < best_eps)))) {
      best_score = score;
      best_eps = eps;
    }
  }
  return best_eps;
}

}  // namespace pbo

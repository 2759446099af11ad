#include "pbo/exploration.hpp"

#include <cmath>
#include <numbers>

namespace pbo {

namespace {

void check_context(const IdwContext& ctx, const Vector& x) {
  if (ctx.samples.empty()) throw InputError("IDW: sample set is empty");
  require_dim(x, ctx.samples.front().size(), "IDW");
}

double weight_sum(const IdwContext& ctx, const Vector& x) {
  double s = 0.0;
  for (const auto& xi : ctx.samples) s += 1.0 / (x - xi).squaredNorm();
  return s;
}

}  // namespace

int coincident_sample(const IdwContext& ctx, const Vector& x) {
  const double tol2 = ctx.coincidence_tol * ctx.coincidence_tol;
  for (std::size_t i = 0; i < ctx.samples.size(); ++i) {
    const double d2 = (x - ctx.samples[i]).squaredNorm();
    if (d2 <= tol2 || d2 == 0.0) return static_cast<int>(i);
  }
  return -1;
}

double idw_weight(const IdwContext& ctx, int i, const Vector& x) {
  if (i < 0 || i >= ctx.size()) throw InputError("idw_weight: sample index out of range");
  check_context(ctx, x);
  const double d2 = (x - ctx.samples[static_cast<std::size_t>(i)]).squaredNorm();
  if (d2 <= ctx.coincidence_tol * ctx.coincidence_tol || d2 == 0.0) {
    throw DomainError("idw_weight: x coincides with sample " + std::to_string(i));
  }
  return 1.0 / d2;
}

double idw_distance(const IdwContext& ctx, const Vector& x) {
  check_context(ctx, x);
  if (coincident_sample(ctx, x) >= 0) return 0.0;
  return -2.0 / std::numbers::pi * std::atan(1.0 / weight_sum(ctx, x));
}

Vector idw_distance_gradient(const IdwContext& ctx, const Vector& x) {
  check_context(ctx, x);
  Vector g = Vector::Zero(x.size());
  if (coincident_sample(ctx, x) >= 0) return g;
  double sum_w = 0.0;
  for (const auto& xi : ctx.samples) {
    const Vector d = x - xi;
    const double w = 1.0 / d.squaredNorm();
    sum_w += w;
    g += (w * w) * d;
  }
  return (-4.0 / std::numbers::pi / (1.0 + sum_w * sum_w)) * g;
}

double idw_distance_cglisp(const IdwContext& ctx, const Vector& x, int best_index, int n_max) {
  check_context(ctx, x);
  const int N = ctx.size();
  if (best_index < 0 || best_index >= N) throw InputError("idw_distance_cglisp: best index out of range");
  if (n_max < N || n_max < 1) throw InputError("idw_distance_cglisp: N exceeds n_max");
  if (coincident_sample(ctx, x) >= 0) return 0.0;

  const Vector& xb = ctx.samples[static_cast<std::size_t>(best_index)];
  double w_best = 0.0;
  for (int i = 0; i < N; ++i) {
    if (i != best_index) w_best += 1.0 / (xb - ctx.samples[static_cast<std::size_t>(i)]).squaredNorm();
  }
  const double sum_w = weight_sum(ctx, x);
  const double frac = static_cast<double>(N) / static_cast<double>(n_max);
  return (frac - 1.0) * std::atan(w_best / sum_w) - frac * std::atan(1.0 / sum_w);
}

}  // namespace pbo

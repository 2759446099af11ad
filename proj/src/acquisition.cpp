#include "pbo/acquisition.hpp"

#include <algorithm>
#include <string>

namespace pbo {

DeltaCycle::DeltaCycle(std::vector<double> sequence, int index) : sequence_(std::move(sequence)), index_(index) {
  if (sequence_.empty()) throw InputError("delta cycle: sequence must not be empty");
  for (double d : sequence_) {
    if (!(d >= 0.0 && d <= 1.0)) throw InputError("delta cycle: values must lie in [0, 1]");
  }
  if (index_ < 0) throw InputError("delta cycle: index must be non-negative");
}

double DeltaCycle::delta() const noexcept { return sequence_[static_cast<std::size_t>(index_) % sequence_.size()]; }

bool DeltaCycle::contains_zero() const noexcept {
  return std::find(sequence_.begin(), sequence_.end(), 0.0) != sequence_.end();
}

DeltaCycle cycle_step(const DeltaCycle& cycle, bool improved) {
  if (improved) return cycle;
  return DeltaCycle(cycle.sequence(), (cycle.index() + 1) % cycle.size());
}

std::string_view to_string(AcquisitionVariant v) noexcept {
  switch (v) {
    case AcquisitionVariant::GlispR:
      return "glispr";
    case AcquisitionVariant::GlispLegacy:
      return "glisp";
    case AcquisitionVariant::CGlispLegacy:
      return "cglisp";
  }
  return "unknown";
}

AcquisitionVariant acquisition_variant_from_string(std::string_view name) {
  if (name == "glispr") return AcquisitionVariant::GlispR;
  if (name == "glisp") return AcquisitionVariant::GlispLegacy;
  if (name == "cglisp") return AcquisitionVariant::CGlispLegacy;
  throw InputError("unknown acquisition variant '" + std::string(name) + "'");
}

AcquisitionContext make_glisp_r_context(RbfSurrogate surrogate, IdwContext idw, AugmentedSet aug, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("GLISp-r acquisition: delta must lie in [0, 1]");
  std::vector<double> fv;
  std::vector<double> zv;
  fv.reserve(aug.points.size());
  zv.reserve(aug.points.size());
  for (const auto& p : aug.points) {
    fv.push_back(surrogate_eval(surrogate, p));
    zv.push_back(idw_distance(idw, p));
  }
  AcquisitionContext ctx;
  ctx.surrogate_stats = minmax_stats(fv);
  ctx.exploration_stats = minmax_stats(zv);
  ctx.surrogate = std::move(surrogate);
  ctx.idw = std::move(idw);
  ctx.aug_points = std::move(aug);
  ctx.delta = delta;
  ctx.variant = AcquisitionVariant::GlispR;
  return ctx;
}

double legacy_delta_f(const RbfSurrogate& surrogate, const PointSet& samples) {
  if (samples.empty()) return 1.0;
  double lo = surrogate_eval(surrogate, samples.front());
  double hi = lo;
  for (const auto& p : samples) {
    const double v = surrogate_eval(surrogate, p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double range = hi - lo;
  return range > 0.0 ? range : 1.0;
}

AcquisitionContext make_legacy_context(RbfSurrogate surrogate, IdwContext idw, double delta,
                                       AcquisitionVariant variant, int best_index, int n_max) {
  if (variant == AcquisitionVariant::GlispR) throw InputError("make_legacy_context: GlispR is not a legacy variant");
  if (!(delta >= 0.0)) throw InputError("legacy acquisition: delta must be non-negative");
  AcquisitionContext ctx;
  ctx.delta_f = legacy_delta_f(surrogate, idw.samples);
  ctx.surrogate = std::move(surrogate);
  ctx.idw = std::move(idw);
  ctx.delta = delta;
  ctx.variant = variant;
  ctx.best_index = best_index;
  ctx.n_max = n_max;
  return ctx;
}

double acquisition_glisp_r(const AcquisitionContext& ctx, const Vector& x) {
  if (ctx.variant != AcquisitionVariant::GlispR) throw InputError("acquisition_glisp_r: wrong variant");
  const double z = rescale(idw_distance(ctx.idw, x), ctx.exploration_stats);
  if (ctx.delta == 0.0) return z;
  const double f = rescale(surrogate_eval(ctx.surrogate, x), ctx.surrogate_stats);
  if (ctx.delta == 1.0) return f;
  return ctx.delta * f + (1.0 - ctx.delta) * z;
}

double acquisition_glisp_legacy(const RbfSurrogate& surrogate, const IdwContext& idw, double delta, double delta_f,
                                const Vector& x) {
  const double df = delta_f > 0.0 ? delta_f : 1.0;
  return surrogate_eval(surrogate, x) / df + delta * idw_distance(idw, x);
}

double acquisition(const AcquisitionContext& ctx, const Vector& x) {
  switch (ctx.variant) {
    case AcquisitionVariant::GlispR:
      return acquisition_glisp_r(ctx, x);
    case AcquisitionVariant::GlispLegacy:
      return acquisition_glisp_legacy(ctx.surrogate, ctx.idw, ctx.delta, ctx.delta_f, x);
    case AcquisitionVariant::CGlispLegacy:
      return surrogate_eval(ctx.surrogate, x) / ctx.delta_f +
             ctx.delta * idw_distance_cglisp(ctx.idw, x, ctx.best_index, ctx.n_max);
  }
  return 0.0;
}

Vector acquisition_gradient(const AcquisitionContext& ctx, const Vector& x) {
  if (ctx.variant != AcquisitionVariant::GlispR) throw InputError("acquisition_gradient: only GlispR is supported");
  Vector g = ((1.0 - ctx.delta) / ctx.exploration_stats.delta_h) * idw_distance_gradient(ctx.idw, x);
  if (ctx.delta > 0.0) g += (ctx.delta / ctx.surrogate_stats.delta_h) * surrogate_gradient(ctx.surrogate, x);
  return g;
}

}  // namespace pbo

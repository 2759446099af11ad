#pragma once

#include "pbo/exploration.hpp"
#include "pbo/rescaling.hpp"
#include "pbo/surrogate.hpp"

#include <string_view>
#include <vector>

namespace pbo {

/// Cyclic sequence of exploitation weights. The current weight is
/// sequence[index mod size].
class DeltaCycle {
 public:
  DeltaCycle() = default;
  /// Throws InputError on an empty sequence or values outside [0, 1].
  explicit DeltaCycle(std::vector<double> sequence, int index = 0);

  double delta() const noexcept;
  int index() const noexcept { return index_; }
  int size() const noexcept { return static_cast<int>(sequence_.size()); }
  const std::vector<double>& sequence() const noexcept { return sequence_; }
  bool contains_zero() const noexcept;

 private:
  std::vector<double> sequence_{0.95, 0.7, 0.35, 0.0};
  int index_ = 0;
};

/// Keeps the weight after an improvement, otherwise moves to the next one.
DeltaCycle cycle_step(const DeltaCycle& cycle, bool improved);

enum class AcquisitionVariant { GlispR, GlispLegacy, CGlispLegacy };

std::string_view to_string(AcquisitionVariant v) noexcept;
/// Accepts "glispr", "glisp" and "cglisp".
AcquisitionVariant acquisition_variant_from_string(std::string_view name);

struct AcquisitionContext {
  RbfSurrogate surrogate;
  IdwContext idw;
  AugmentedSet aug_points;
  MinMaxStats surrogate_stats;
  MinMaxStats exploration_stats;
  double delta = 0.0;
  AcquisitionVariant variant = AcquisitionVariant::GlispR;
  /// Legacy variants only.
  double delta_f = 1.0;
  int best_index = 0;
  int n_max = 0;
};

/// Rescaled blend over the augmented set. delta must lie in [0, 1].
AcquisitionContext make_glisp_r_context(RbfSurrogate surrogate, IdwContext idw, AugmentedSet aug, double delta);

/// Surrogate divided by its range over the samples plus delta * exploration.
/// For CGlispLegacy the exploration term is idw_distance_cglisp.
AcquisitionContext make_legacy_context(RbfSurrogate surrogate, IdwContext idw, double delta,
                                       AcquisitionVariant variant, int best_index, int n_max);

/// Range of the surrogate over the given points; 1 when the range is 0.
double legacy_delta_f(const RbfSurrogate& surrogate, const PointSet& samples);

double acquisition_glisp_r(const AcquisitionContext& ctx, const Vector& x);
double acquisition_glisp_legacy(const RbfSurrogate& surrogate, const IdwContext& idw, double delta, double delta_f,
                                const Vector& x);

/// Dispatches on ctx.variant.
double acquisition(const AcquisitionContext& ctx, const Vector& x);

/// Gradient of the GlispR acquisition; throws InputError for other variants.
Vector acquisition_gradient(const AcquisitionContext& ctx, const Vector& x);

}  // namespace pbo

#pragma once

#include <optional>
#include <string_view>

namespace pbo {

enum class RadialKind {
  InverseQuadratic,
  Multiquadratic,
  Linear,
  Gaussian,
  ThinPlateSpline,
  InverseMultiquadratic,
};

/// phi(epsilon * r). ThinPlateSpline takes its limit value 0 at r = 0.
/// Throws InputError for epsilon <= 0 or r < 0.
double radial_eval(RadialKind kind, double epsilon, double r);

/// d/dr phi(epsilon * r). At r = 0 the derivative of the non-smooth Linear
/// kind is reported as 0 (a subgradient).
double radial_derivative(RadialKind kind, double epsilon, double r);

/// True for kinds whose radial basis functions are differentiable everywhere.
bool is_smooth(RadialKind kind) noexcept;

std::string_view to_string(RadialKind kind) noexcept;
std::optional<RadialKind> radial_kind_from_string(std::string_view name) noexcept;

}  // namespace pbo

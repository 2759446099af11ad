#include "pbo/radial.hpp"

#include "pbo/types.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace pbo {

namespace {

void check_args(double epsilon, double r) {
  if (!(epsilon > 0.0)) throw InputError("radial function: shape parameter must be positive");
  if (!(r >= 0.0)) throw InputError("radial function: distance must be non-negative");
}

constexpr std::array<std::pair<RadialKind, std::string_view>, 6> kNames{{
    {RadialKind::InverseQuadratic, "inverse_quadratic"},
    {RadialKind::Multiquadratic, "multiquadratic"},
    {RadialKind::Linear, "linear"},
    {RadialKind::Gaussian, "gaussian"},
    {RadialKind::ThinPlateSpline, "thin_plate_spline"},
    {RadialKind::InverseMultiquadratic, "inverse_multiquadratic"},
}};

}  // namespace

double radial_eval(RadialKind kind, double epsilon, double r) {
  check_args(epsilon, r);
  const double s = epsilon * r;
  switch (kind) {
    case RadialKind::InverseQuadratic:
      return 1.0 / (1.0 + s * s);
    case RadialKind::Multiquadratic:
      return std::sqrt(1.0 + s * s);
    case RadialKind::Linear:
      return s;
    case RadialKind::Gaussian:
      return std::exp(-s * s);
    case RadialKind::ThinPlateSpline:
      return s > 0.0 ? s * s * std::log(s) : 0.0;
    case RadialKind::InverseMultiquadratic:
      return 1.0 / std::sqrt(1.0 + s * s);
  }
  return 0.0;
}

double radial_derivative(RadialKind kind, double epsilon, double r) {
  check_args(epsilon, r);
  const double s = epsilon * r;
  switch (kind) {
    case RadialKind::InverseQuadratic: {
      const double d = 1.0 + s * s;
      return -2.0 * epsilon * s / (d * d);
    }
    case RadialKind::Multiquadratic:
      return epsilon * s / std::sqrt(1.0 + s * s);
    case RadialKind::Linear:
      return r > 0.0 ? epsilon : 0.0;
    case RadialKind::Gaussian:
      return -2.0 * epsilon * s * std::exp(-s * s);
    case RadialKind::ThinPlateSpline:
      return s > 0.0 ? epsilon * s * (2.0 * std::log(s) + 1.0) : 0.0;
    case RadialKind::InverseMultiquadratic: {
      const double d = 1.0 + s * s;
      return -epsilon * s / (d * std::sqrt(d));
    }
  }
  return 0.0;
}

bool is_smooth(RadialKind kind) noexcept {
  return kind != RadialKind::Linear && kind != RadialKind::ThinPlateSpline;
}

std::string_view to_string(RadialKind kind) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<RadialKind> radial_kind_from_string(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

}  // namespace pbo

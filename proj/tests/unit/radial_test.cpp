#include "pbo/radial.hpp"
#include "pbo/types.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pbo;

namespace {

constexpr RadialKind kAll[] = {RadialKind::InverseQuadratic, RadialKind::Multiquadratic,
                               RadialKind::Linear,           RadialKind::Gaussian,
                               RadialKind::ThinPlateSpline,  RadialKind::InverseMultiquadratic};

}  // namespace

TEST(Radial, ValuesAtZero) {
  EXPECT_EQ(radial_eval(RadialKind::InverseQuadratic, 1.0, 0.0), 1.0);
  EXPECT_EQ(radial_eval(RadialKind::Gaussian, 1.0, 0.0), 1.0);
  EXPECT_EQ(radial_eval(RadialKind::Multiquadratic, 3.0, 0.0), 1.0);
  EXPECT_EQ(radial_eval(RadialKind::InverseMultiquadratic, 3.0, 0.0), 1.0);
  EXPECT_EQ(radial_eval(RadialKind::Linear, 3.0, 0.0), 0.0);
  EXPECT_EQ(radial_eval(RadialKind::ThinPlateSpline, 3.0, 0.0), 0.0);
}

TEST(Radial, InverseQuadraticHandValue) {
  EXPECT_DOUBLE_EQ(radial_eval(RadialKind::InverseQuadratic, 2.0, 1.0), 0.2);
}

TEST(Radial, ClosedForms) {
  const double s = 0.7 * 1.3;
  EXPECT_DOUBLE_EQ(radial_eval(RadialKind::Multiquadratic, 0.7, 1.3), std::sqrt(1 + s * s));
  EXPECT_DOUBLE_EQ(radial_eval(RadialKind::Linear, 0.7, 1.3), s);
  EXPECT_DOUBLE_EQ(radial_eval(RadialKind::Gaussian, 0.7, 1.3), std::exp(-s * s));
  EXPECT_DOUBLE_EQ(radial_eval(RadialKind::ThinPlateSpline, 0.7, 1.3), s * s * std::log(s));
  EXPECT_DOUBLE_EQ(radial_eval(RadialKind::InverseMultiquadratic, 0.7, 1.3), 1 / std::sqrt(1 + s * s));
}

TEST(Radial, InvalidArgumentsThrow) {
  EXPECT_THROW(radial_eval(RadialKind::Gaussian, 0.0, 1.0), InputError);
  EXPECT_THROW(radial_eval(RadialKind::Gaussian, -1.0, 1.0), InputError);
  EXPECT_THROW(radial_eval(RadialKind::Gaussian, 1.0, -0.1), InputError);
}

TEST(Radial, FiniteEverywhere) {
  pbo::testing::Gen gen(1);
  for (auto k : kAll) {
    for (int i = 0; i < 500; ++i) {
      const double eps = gen.uniform(1e-3, 20.0);
      const double r = gen.uniform(0.0, 100.0);
      EXPECT_TRUE(std::isfinite(radial_eval(k, eps, r)));
    }
  }
}

TEST(Radial, DerivativeMatchesFiniteDifference) {
  pbo::testing::Gen gen(2);
  for (auto k : kAll) {
    for (int i = 0; i < 200; ++i) {
      const double eps = gen.uniform(0.1, 5.0);
      const double r = gen.uniform(0.05, 3.0);
      const double h = 1e-6;
      const double fd = (radial_eval(k, eps, r + h) - radial_eval(k, eps, r - h)) / (2 * h);
      const double an = radial_derivative(k, eps, r);
      EXPECT_LE(std::abs(fd - an), 1e-6 * std::max(1.0, std::abs(an))) << to_string(k);
    }
  }
}

TEST(Radial, SmoothnessFlags) {
  EXPECT_TRUE(is_smooth(RadialKind::InverseQuadratic));
  EXPECT_TRUE(is_smooth(RadialKind::Gaussian));
  EXPECT_FALSE(is_smooth(RadialKind::Linear));
  EXPECT_FALSE(is_smooth(RadialKind::ThinPlateSpline));
}

TEST(Radial, NameRoundTrip) {
  for (auto k : kAll) EXPECT_EQ(radial_kind_from_string(to_string(k)), k);
  EXPECT_FALSE(radial_kind_from_string("cubic").has_value());
}

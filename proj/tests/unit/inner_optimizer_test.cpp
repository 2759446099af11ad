#include "pbo/inner_optimizer.hpp"

#include "pbo/exploration.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pbo;
using pbo::testing::Gen;
using pbo::testing::vec;

TEST(PsoConfig, DimensionDefaults) {
  const auto a = PsoConfig::defaults_for(1);
  EXPECT_EQ(a.swarm_size, 30);
  EXPECT_EQ(a.max_iters, 200);
  const auto b = PsoConfig::defaults_for(5, 9);
  EXPECT_EQ(b.swarm_size, 50);
  EXPECT_EQ(b.max_iters, 1000);
  EXPECT_EQ(b.seed, 9u);
  EXPECT_EQ(b.inertia, 0.729);
  EXPECT_EQ(b.cognitive, 1.49);
  EXPECT_EQ(b.social, 1.49);
  EXPECT_EQ(b.penalty_weight, 1e6);
}

TEST(Pso, InteriorQuadratic) {
  const Vector c = vec({0.31, -0.47});
  const ConstraintSet box(vec({-1.0, -1.0}), vec({1.0, 1.0}));
  const auto r = minimize_acquisition([&](const Vector& x) { return (x - c).squaredNorm(); }, box,
                                      PsoConfig::defaults_for(2, 1));
  EXPECT_LE((r.x - c).norm(), 1e-3);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.value, (r.x - c).squaredNorm());
}

TEST(Pso, FlatObjective) {
  const ConstraintSet box(vec({-1.0}), vec({1.0}));
  const auto r = minimize_acquisition([](const Vector&) { return 4.5; }, box, PsoConfig::defaults_for(1, 2));
  EXPECT_EQ(r.value, 4.5);
  EXPECT_TRUE(is_feasible(box, r.x));
}

// z for X = {-1, 1} on [-3, 3] is smallest at the box ends.
TEST(Pso, PureExplorationGoesToBoundary) {
  IdwContext idw;
  idw.samples = {vec({-1.0}), vec({1.0})};
  const ConstraintSet box(vec({-3.0}), vec({3.0}));
  const auto r =
      minimize_acquisition([&](const Vector& x) { return idw_distance(idw, x); }, box, PsoConfig::defaults_for(1, 3));
  EXPECT_GE(std::abs(r.x[0]), 2.9);
  EXPECT_NEAR(r.value, -2.0 / std::numbers::pi * std::atan(3.2), 1e-3);
}

TEST(Pso, DeterministicForSeed) {
  const ConstraintSet box(vec({-2.0, -2.0, -2.0}), vec({2.0, 2.0, 2.0}));
  auto f = [](const Vector& x) { return std::sin(3 * x[0]) + x.squaredNorm() * 0.1 + std::cos(x[1] * x[2]); };
  const auto a = minimize_acquisition(f, box, PsoConfig::defaults_for(3, 17));
  const auto b = minimize_acquisition(f, box, PsoConfig::defaults_for(3, 17));
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.value, b.value);
}

TEST(Pso, GlobalBestIsNonIncreasing) {
  Gen gen(61);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = gen.integer(1, 4);
    const Vector shift = gen.point(n);
    const ConstraintSet box(Vector::Constant(n, -1.0), Vector::Constant(n, 1.0));
    auto f = [&](const Vector& x) { return (x - shift).squaredNorm() + 0.3 * std::cos(7 * x.sum()); };
    auto cfg = PsoConfig::defaults_for(n, static_cast<std::uint64_t>(trial));
    const auto r = minimize_acquisition(f, box, cfg);
    ASSERT_EQ(static_cast<int>(r.trace.size()), cfg.max_iters);
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1]);
  }
}

TEST(Pso, PenaltyKeepsPointFeasible) {
  // Minimize x0 + x1 on the unit box subject to x0^2 + x1^2 >= 0.5.
  const ConstraintSet c(vec({0.0, 0.0}), vec({1.0, 1.0}),
                        [](const Vector& x) { return vec({0.5 - x.squaredNorm()}); });
  const auto r = minimize_acquisition([](const Vector& x) { return x.sum(); }, c, PsoConfig::defaults_for(2, 5));
  EXPECT_TRUE(r.feasible);
  EXPECT_TRUE(is_feasible(c, r.x, 1e-6));
  EXPECT_NEAR(r.value, std::sqrt(0.5), 1e-2);
}

TEST(Pso, EqualityConstraintReached) {
  const ConstraintSet c(vec({-1.0, -1.0}), vec({1.0, 1.0}), {},
                        [](const Vector& x) { return vec({x[0] - x[1]}); });
  const auto r = minimize_acquisition([](const Vector& x) { return (x - vec({0.5, -0.5})).squaredNorm(); }, c,
                                      PsoConfig::defaults_for(2, 6));
  // The swarm crawls along the thin feasible line; only closeness to it and
  // a sane objective value are asserted.
  EXPECT_LE(std::abs(r.x[0] - r.x[1]), 1e-3);
  EXPECT_LE(r.value, 0.6);
}

TEST(Pso, InfeasibleProblemIsFlagged) {
  const ConstraintSet c(vec({0.0}), vec({1.0}), [](const Vector& x) { return vec({2.0 - x[0]}); });
  const auto r = minimize_acquisition([](const Vector& x) { return x[0]; }, c, PsoConfig::defaults_for(1, 7));
  EXPECT_FALSE(r.feasible);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
}

TEST(Pso, InvalidConfigThrows) {
  const ConstraintSet box(vec({0.0}), vec({1.0}));
  PsoConfig cfg;
  cfg.swarm_size = 0;
  EXPECT_THROW(minimize_acquisition([](const Vector&) { return 0.0; }, box, cfg), InputError);
}

TEST(Refine, StationaryMidpointUnchanged) {
  IdwContext idw;
  idw.samples = {vec({-0.4, 0.2}), vec({0.6, -0.2})};
  const Vector mid = 0.5 * (idw.samples[0] + idw.samples[1]);
  const auto r = multistart_refine([&](const Vector& x) { return idw_distance(idw, x); },
                                   [&](const Vector& x) { return idw_distance_gradient(idw, x); }, {mid},
                                   vec({-1.0, -1.0}), vec({1.0, 1.0}));
  EXPECT_LE((r.x - mid).norm(), 1e-12);
}

TEST(Refine, CornerMinimizerKept) {
  const Vector lo = vec({-1.0, -1.0});
  const Vector hi = vec({1.0, 1.0});
  const auto r = multistart_refine([](const Vector& x) { return x.sum(); },
                                   [](const Vector& x) { return Vector::Ones(x.size()); }, {lo}, lo, hi);
  EXPECT_EQ(r.x, lo);
  EXPECT_EQ(r.value, -2.0);
}

TEST(Refine, QuadraticConverges) {
  Gen gen(62);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(1, 5);
    const Vector c = gen.point(n, -0.8, 0.8);
    Vector w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = gen.uniform(0.5, 3.0);
    auto f = [&](const Vector& x) { return (x - c).cwiseProduct(w).dot(x - c); };
    auto g = [&](const Vector& x) -> Vector { return 2.0 * (x - c).cwiseProduct(w); };
    const auto r = multistart_refine(f, g, {0.9 * c}, Vector::Constant(n, -1.0), Vector::Constant(n, 1.0), 500);
    EXPECT_LE((r.x - c).lpNorm<Eigen::Infinity>(), 1e-6) << "trial " << trial;
  }
}

TEST(Refine, NeverWorseThanBestStart) {
  Gen gen(63);
  for (int trial = 0; trial < 20; ++trial) {
    IdwContext idw;
    idw.samples = gen.distinct_points(gen.integer(2, 8), 2, 1e-2);
    auto f = [&](const Vector& x) { return idw_distance(idw, x); };
    auto g = [&](const Vector& x) { return idw_distance_gradient(idw, x); };
    PointSet starts;
    for (int k = 0; k < 5; ++k) starts.push_back(gen.point(2));
    double best_start = 1e300;
    for (const auto& s : starts) best_start = std::min(best_start, f(s));
    const auto r = multistart_refine(f, g, starts, vec({-1.0, -1.0}), vec({1.0, 1.0}));
    EXPECT_LE(r.value, best_start);
    EXPECT_EQ(r.value, f(r.x));
  }
}

TEST(Refine, NoStartsThrows) {
  EXPECT_THROW(multistart_refine([](const Vector&) { return 0.0; }, [](const Vector& x) { return x; }, {},
                                 vec({0.0}), vec({1.0})),
               InputError);
}

#include "pbo/inner_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace pbo {

PsoConfig PsoConfig::defaults_for(Eigen::Index n, std::uint64_t seed) {
  PsoConfig c;
  c.swarm_size = std::max<int>(30, 10 * static_cast<int>(n));
  c.max_iters = 200 * static_cast<int>(n);
  c.seed = seed;
  return c;
}

namespace {

Vector clamp(const Vector& x, const Vector& lo, const Vector& hi) { return x.cwiseMax(lo).cwiseMin(hi); }

}  // namespace

InnerResult minimize_acquisition(const ScalarFunction& objective, const ConstraintSet& constraint,
                                 const PsoConfig& cfg) {
  constraint.validate();
  if (cfg.swarm_size < 1 || cfg.max_iters < 1) throw InputError("PSO: swarm size and iterations must be positive");
  const Eigen::Index n = constraint.dim();
  const Vector& lo = constraint.lower;
  const Vector& hi = constraint.upper;
  const Vector span = hi - lo;
  const bool general = constraint.has_general_constraints();

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Eval {
    double obj;
    double pen;
    bool feasible;
    double total() const { return obj + pen; }
  };
  auto evaluate = [&](const Vector& x) {
    if (!general) return Eval{objective(x), 0.0, true};
    return Eval{objective(x), cfg.penalty_weight * constraint_violation(constraint, x), is_feasible(constraint, x)};
  };

  const auto S = static_cast<std::size_t>(cfg.swarm_size);
  PointSet pos(S), vel(S), pbest(S);
  std::vector<Eval> pbest_val(S);
  for (std::size_t i = 0; i < S; ++i) {
    pos[i].resize(n);
    vel[i].resize(n);
    for (Eigen::Index d = 0; d < n; ++d) {
      pos[i][d] = lo[d] + unit(rng) * span[d];
      vel[i][d] = (unit(rng) - 0.5) * span[d] * 0.2;
    }
    pbest[i] = pos[i];
    pbest_val[i] = evaluate(pos[i]);
  }

  // The best feasible point seen is tracked separately so that one is
  // returned whenever it was encountered.
  std::size_t g = 0;
  for (std::size_t i = 1; i < S; ++i) {
    if (pbest_val[i].total() < pbest_val[g].total()) g = i;
  }
  Vector gbest = pbest[g];
  Eval gbest_val = pbest_val[g];
  Vector feas_best;
  double feas_val = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < S; ++i) {
    if (pbest_val[i].feasible && pbest_val[i].obj < feas_val) {
      feas_val = pbest_val[i].obj;
      feas_best = pbest[i];
    }
  }

  InnerResult out;
  out.trace.reserve(static_cast<std::size_t>(cfg.max_iters));
  for (int it = 0; it < cfg.max_iters; ++it) {
    for (std::size_t i = 0; i < S; ++i) {
      for (Eigen::Index d = 0; d < n; ++d) {
        const double r1 = unit(rng);
        const double r2 = unit(rng);
        double v = cfg.inertia * vel[i][d] + cfg.cognitive * r1 * (pbest[i][d] - pos[i][d]) +
                   cfg.social * r2 * (gbest[d] - pos[i][d]);
        v = std::clamp(v, -span[d], span[d]);
        vel[i][d] = v;
      }
      pos[i] = clamp(pos[i] + vel[i], lo, hi);
      const Eval e = evaluate(pos[i]);
      if (e.total() < pbest_val[i].total()) {
        pbest_val[i] = e;
        pbest[i] = pos[i];
      }
      if (e.feasible && e.obj < feas_val) {
        feas_val = e.obj;
        feas_best = pos[i];
      }
    }
    for (std::size_t i = 0; i < S; ++i) {
      if (pbest_val[i].total() < gbest_val.total()) {
        gbest_val = pbest_val[i];
        gbest = pbest[i];
      }
    }
    out.trace.push_back(gbest_val.total());
  }

  if (feas_best.size() == n) {
    out.x = feas_best;
    out.value = feas_val;
    out.feasible = true;
  } else {
    out.x = gbest;
    out.value = gbest_val.obj;
    out.feasible = false;
  }
  return out;
}

InnerResult multistart_refine(const ScalarFunction& objective, const GradientFunction& gradient,
                              const PointSet& starts, const Vector& lower, const Vector& upper, int max_iters) {
  if (starts.empty()) throw InputError("multistart_refine: no starting points");
  InnerResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    require_dim(s, lower.size(), "multistart_refine start");
    Vector x = clamp(s, lower, upper);
    double fx = objective(x);
    double step = 1.0;
    for (int it = 0; it < max_iters; ++it) {
      const Vector g = gradient(x);
      if (!g.allFinite() || g.lpNorm<Eigen::Infinity>() == 0.0) break;
      bool moved = false;
      double t = step;
      for (int ls = 0; ls < 40; ++ls) {
        const Vector cand = clamp(x - t * g, lower, upper);
        const Vector d = cand - x;
        if (d.lpNorm<Eigen::Infinity>() == 0.0) break;
        const double fc = objective(cand);
        // Armijo condition along the projected arc.
        if (fc <= fx + 1e-4 * g.dot(d)) {
          moved = fc < fx;
          x = cand;
          fx = fc;
          step = t * 2.0;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
    }
    if (fx < best.value) {
      best.value = fx;
      best.x = x;
    }
  }
  return best;
}

}  // namespace pbo

#include "pbo/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace pbo {

namespace {

constexpr double kDuplicateTol = 1e-9;

enum SeedTag : std::uint64_t { kDesignSeed = 0, kPsoSeed = 1, kAugSeed = 2, kFallbackSeed = 3 };

bool is_duplicate(const PointSet& samples, const Vector& x) {
  return std::any_of(samples.begin(), samples.end(),
                     [&](const Vector& s) { return (s - x).norm() <= kDuplicateTol; });
}

void check_answer(int answer) {
  if (answer < -1 || answer > 1) {
    throw ProtocolError("preference answer must be -1, 0 or 1, got " + std::to_string(answer));
  }
}

PsoConfig pso_config(const SolverConfig& cfg, Eigen::Index n, std::uint64_t seed) {
  PsoConfig p = PsoConfig::defaults_for(n, seed);
  if (cfg.pso_swarm > 0) p.swarm_size = cfg.pso_swarm;
  if (cfg.pso_iters > 0) p.max_iters = cfg.pso_iters;
  return p;
}

/// Minimizes the rescaled blend for a given delta; pure exploration is
/// additionally polished by gradient descent from the augmented points.
Vector minimize_glisp_r(const SessionState& st, const SolverConfig& cfg, const AugmentedSet& aug, double delta,
                        std::uint64_t iter_seed) {
  const AcquisitionContext ctx = make_glisp_r_context(st.surrogate, IdwContext{st.dataset.samples}, aug, delta);
  const auto f = [&ctx](const Vector& x) { return acquisition(ctx, x); };
  const Eigen::Index n = st.scaled.dim();
  InnerResult best = minimize_acquisition(f, st.scaled, pso_config(cfg, n, mix_seed(iter_seed, kPsoSeed)));
  if (delta == 0.0 && cfg.use_refiner) {
    PointSet starts(aug.points.begin() + aug.source_count, aug.points.end());
    starts.push_back(best.x);
    const auto g = [&ctx](const Vector& x) { return acquisition_gradient(ctx, x); };
    const InnerResult ref = multistart_refine(f, g, starts, st.scaled.lower, st.scaled.upper);
    const bool ok = !st.scaled.has_general_constraints() || is_feasible(st.scaled, ref.x, 1e-6);
    if (ok && ref.value < best.value) best = ref;
  }
  return best.x;
}

}  // namespace

SolverConfig SolverConfig::defaults_for(Eigen::Index n) {
  SolverConfig c;
  c.n_init = 4 * static_cast<int>(n);
  c.n_max = 200;
  return c;
}

void SolverConfig::validate() const {
  if (n_init < 2) throw InputError("solver config: n_init must be at least 2");
  if (n_max <= n_init) throw InputError("solver config: n_max must exceed n_init");
  if (!(epsilon_init > 0.0)) throw InputError("solver config: epsilon_init must be positive");
  if (!(sigma > 0.0)) throw InputError("solver config: sigma must be positive");
  if (!(lambda >= 0.0)) throw InputError("solver config: lambda must be non-negative");
  if (k_aug < 1) throw InputError("solver config: k_aug must be positive");
  if (loocv_grid.empty()) throw InputError("solver config: LOOCV grid must not be empty");
  for (double e : loocv_grid) {
    if (!(e > 0.0)) throw InputError("solver config: LOOCV grid values must be positive");
  }
  for (int k : recal_iters) {
    if (k < 1) throw InputError("solver config: recalibration iterations must be positive");
  }
  if (!(legacy_delta >= 0.0)) throw InputError("solver config: legacy_delta must be non-negative");
  if (delta_cycle.size() < 1) throw InputError("solver config: delta cycle must not be empty");
  if (pso_swarm < 0 || pso_iters < 0) throw InputError("solver config: PSO sizes must be non-negative");
}

PreferenceDataset initial_queries(const PointSet& samples, PreferenceOracle& oracle) {
  if (samples.size() < 2) throw InputError("initial_queries: at least two samples are required");
  PreferenceDataset data;
  data.samples = samples;
  data.best_index = 0;
  for (int i = 1; i < static_cast<int>(samples.size()); ++i) {
    const int b = oracle.query(samples[static_cast<std::size_t>(data.best_index)], samples[static_cast<std::size_t>(i)]);
    check_answer(b);
    data.pairs.emplace_back(data.best_index, i);
    data.outcomes.push_back(b);
    if (b == 1) data.best_index = i;
  }
  return data;
}

SessionState start_session(const ConstraintSet& problem, const SolverConfig& cfg) {
  cfg.validate();
  problem.validate();
  SessionState st;
  st.problem = problem;
  st.rescaler = make_rescaler(problem);
  st.scaled = rescaled_constraints(problem, st.rescaler);
  st.dataset.samples =
      latin_hypercube(st.scaled.lower, st.scaled.upper, cfg.n_init, mix_seed(cfg.seed, kDesignSeed));
  st.dataset.best_index = 0;
  st.epsilon = cfg.epsilon_init;
  st.cycle = cfg.delta_cycle;
  st.best_trace.push_back(0);
  return st;
}

Phase phase(const SessionState& state, const SolverConfig& cfg) {
  if (state.next_initial < cfg.n_init) return Phase::InitialQueries;
  if (state.dataset.num_samples() < cfg.n_max) return Phase::Iterating;
  return Phase::Done;
}

bool needs_proposal(const SessionState& state, const SolverConfig& cfg) {
  return phase(state, cfg) == Phase::Iterating && !state.proposal.has_value();
}

void compute_proposal(SessionState& st, const SolverConfig& cfg) {
  if (!needs_proposal(st, cfg)) throw ProtocolError("compute_proposal: no proposal is due");
  const int k_next = st.k + 1;
  const std::uint64_t iter_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(k_next));
  const PreferenceDataset& data = st.dataset;

  if (std::find(cfg.recal_iters.begin(), cfg.recal_iters.end(), k_next) != cfg.recal_iters.end()) {
    st.epsilon = loocv_select_epsilon(data, cfg.kind, cfg.loocv_grid, cfg.sigma, cfg.lambda, st.epsilon);
  }
  const FitResult fit = fit_weights(data, cfg.kind, st.epsilon, cfg.sigma, cfg.lambda);
  st.surrogate = make_surrogate(data, cfg.kind, st.epsilon, fit.beta);

  std::optional<AugmentedSet> aug;
  auto augmented = [&]() -> const AugmentedSet& {
    if (!aug) {
      aug = augment(data.samples, cfg.k_aug, st.scaled.lower, st.scaled.upper, mix_seed(iter_seed, kAugSeed));
    }
    return *aug;
  };

  Vector x;
  double delta_used = 0.0;
  if (cfg.variant == AcquisitionVariant::GlispR) {
    delta_used = st.cycle.delta();
    x = minimize_glisp_r(st, cfg, augmented(), delta_used, iter_seed);
  } else {
    delta_used = cfg.legacy_delta;
    const AcquisitionContext ctx = make_legacy_context(st.surrogate, IdwContext{data.samples}, cfg.legacy_delta,
                                                       cfg.variant, data.best_index, cfg.n_max);
    const auto f = [&ctx](const Vector& p) { return acquisition(ctx, p); };
    x = minimize_acquisition(f, st.scaled, pso_config(cfg, st.scaled.dim(), mix_seed(iter_seed, kPsoSeed))).x;
  }

  if (is_duplicate(data.samples, x)) {
    delta_used = 0.0;
    x = minimize_glisp_r(st, cfg, augmented(), 0.0, iter_seed);
  }
  if (is_duplicate(data.samples, x)) {
    std::mt19937_64 rng(mix_seed(iter_seed, kFallbackSeed));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    do {
      for (Eigen::Index d = 0; d < x.size(); ++d) {
        x[d] = st.scaled.lower[d] + unit(rng) * (st.scaled.upper[d] - st.scaled.lower[d]);
      }
    } while (is_duplicate(data.samples, x));
  }
  st.proposal = std::move(x);
  st.proposal_delta = delta_used;
}

std::optional<PendingQuery> pending_query(const SessionState& st, const SolverConfig& cfg) {
  const Phase ph = phase(st, cfg);
  const auto& xs = st.dataset.samples;
  const int best = st.dataset.best_index;
  if (ph == Phase::InitialQueries) {
    const int i = st.next_initial;
    return PendingQuery{st.rescaler.inverse(xs[static_cast<std::size_t>(best)]),
                        st.rescaler.inverse(xs[static_cast<std::size_t>(i)]), best, i};
  }
  if (ph == Phase::Iterating && st.proposal) {
    return PendingQuery{st.rescaler.inverse(*st.proposal), st.rescaler.inverse(xs[static_cast<std::size_t>(best)]),
                        st.dataset.num_samples(), best};
  }
  return std::nullopt;
}

void apply_answer(SessionState& st, const SolverConfig& cfg, int answer) {
  check_answer(answer);
  auto& data = st.dataset;
  const Phase ph = phase(st, cfg);
  HistoryEntry h;
  h.answer = answer;
  if (ph == Phase::InitialQueries) {
    const int i = st.next_initial;
    h.iteration = 0;
    h.first_index = data.best_index;
    h.second_index = i;
    h.proposed_x = st.rescaler.inverse(data.samples[static_cast<std::size_t>(i)]);
    data.pairs.emplace_back(data.best_index, i);
    data.outcomes.push_back(answer);
    if (answer == 1) data.best_index = i;
    ++st.next_initial;
  } else if (ph == Phase::Iterating && st.proposal) {
    const int idx = data.num_samples();
    h.iteration = st.k + 1;
    h.first_index = idx;
    h.second_index = data.best_index;
    h.delta = st.proposal_delta;
    h.proposed_x = st.rescaler.inverse(*st.proposal);
    data.samples.push_back(*st.proposal);
    data.pairs.emplace_back(idx, data.best_index);
    data.outcomes.push_back(answer);
    const bool improved = answer == -1;
    if (improved) data.best_index = idx;
    st.cycle = cycle_step(st.cycle, improved);
    ++st.k;
    st.proposal.reset();
  } else {
    throw ProtocolError("apply_answer: no query is pending");
  }
  h.best_index = data.best_index;
  st.history.push_back(std::move(h));
  st.best_trace.push_back(data.best_index);
}

void step(SessionState& st, const SolverConfig& cfg, PreferenceOracle& oracle) {
  if (phase(st, cfg) != Phase::Iterating) throw ProtocolError("step: session is not in the iterating phase");
  if (!st.proposal) compute_proposal(st, cfg);
  const auto q = pending_query(st, cfg);
  apply_answer(st, cfg, oracle.query(q->first, q->second));
}

Vector best_point(const SessionState& state) {
  return state.rescaler.inverse(state.dataset.samples[static_cast<std::size_t>(state.dataset.best_index)]);
}

SolveResult solve(const ConstraintSet& problem, PreferenceOracle& oracle, const SolverConfig& cfg) {
  SolveResult out{Vector{}, start_session(problem, cfg)};
  SessionState& st = out.state;
  while (phase(st, cfg) == Phase::InitialQueries) {
    const auto q = pending_query(st, cfg);
    apply_answer(st, cfg, oracle.query(q->first, q->second));
  }
  while (phase(st, cfg) == Phase::Iterating) step(st, cfg, oracle);
  out.x_best = best_point(st);
  return out;
}

}  // namespace pbo

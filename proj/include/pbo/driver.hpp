#pragma once

#include "pbo/acquisition.hpp"
#include "pbo/inner_optimizer.hpp"
#include "pbo/problem.hpp"
#include "pbo/surrogate.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pbo {

/// Answers "how does xi compare to xj": -1 if xi is preferred, 0 if the two
/// are equivalent, +1 if xj is preferred. Points are in original units.
class PreferenceOracle {
 public:
  virtual ~PreferenceOracle() = default;
  virtual int query(const Vector& xi, const Vector& xj) = 0;
};

struct SolverConfig {
  int n_init = 4;
  int n_max = 200;
  RadialKind kind = RadialKind::InverseQuadratic;
  double epsilon_init = 1.0;
  double sigma = 1e-2;
  double lambda = 1e-6;
  DeltaCycle delta_cycle{};
  int k_aug = 5;
  std::vector<int> recal_iters{1, 50, 100};
  std::vector<double> loocv_grid = default_loocv_grid();
  AcquisitionVariant variant = AcquisitionVariant::GlispR;
  /// Exploration weight of the legacy acquisitions.
  double legacy_delta = 2.0;
  std::uint64_t seed = 0;
  /// Gradient polish of pure-exploration proposals.
  bool use_refiner = true;
  /// 0 selects the dimension-based PSO default.
  int pso_swarm = 0;
  int pso_iters = 0;

  /// n_init = 4n, n_max = 200, everything else at its default.
  static SolverConfig defaults_for(Eigen::Index n);
  /// Throws InputError describing the first invalid field.
  void validate() const;
};

enum class Phase { InitialQueries, Iterating, Done };

struct HistoryEntry {
  int iteration = 0;  // 0 during the initial design
  int first_index = 0;
  int second_index = 0;
  int answer = 0;
  int best_index = 0;  // after the answer
  std::optional<double> delta;  // weight that produced the proposal
  Vector proposed_x;  // second_index sample in original units
};

struct SessionState {
  ConstraintSet problem;
  ConstraintSet scaled;
  AffineRescaler rescaler;
  PreferenceDataset dataset;  // rescaled coordinates
  double epsilon = 1.0;
  RbfSurrogate surrogate;
  DeltaCycle cycle;
  int k = 0;
  int next_initial = 1;
  std::optional<Vector> proposal;  // rescaled
  double proposal_delta = 0.0;
  std::vector<HistoryEntry> history;
  std::vector<int> best_trace;  // best index once |X| = N, for N = 1, 2, ...
};

/// Sequential comparison of the incumbent against each next sample.
PreferenceDataset initial_queries(const PointSet& samples, PreferenceOracle& oracle);

/// Rescales the problem and draws the initial design. No queries are made.
SessionState start_session(const ConstraintSet& problem, const SolverConfig& cfg);

Phase phase(const SessionState& state, const SolverConfig& cfg);

/// True when the next query needs an inner solve first.
bool needs_proposal(const SessionState& state, const SolverConfig& cfg);

/// Recalibration, fit, augmentation and acquisition minimization.
void compute_proposal(SessionState& state, const SolverConfig& cfg);

struct PendingQuery {
  Vector first;  // original units
  Vector second;
  int first_index = 0;
  int second_index = 0;  // equals |X| for a new proposal
};

/// The comparison awaiting an answer. During the initial design it is
/// (incumbent, next sample); afterwards (proposal, incumbent).
std::optional<PendingQuery> pending_query(const SessionState& state, const SolverConfig& cfg);

/// Records the answer to pending_query. Throws ProtocolError for answers
/// outside {-1, 0, 1} or when nothing is pending.
void apply_answer(SessionState& state, const SolverConfig& cfg, int answer);

/// One post-design iteration against the oracle.
void step(SessionState& state, const SolverConfig& cfg, PreferenceOracle& oracle);

struct SolveResult {
  Vector x_best;  // original units
  SessionState state;
};

SolveResult solve(const ConstraintSet& problem, PreferenceOracle& oracle, const SolverConfig& cfg);

/// Best sample in original units.
Vector best_point(const SessionState& state);

}  // namespace pbo

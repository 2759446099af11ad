#pragma once

#include "pbo/benchmarks.hpp"
#include "pbo/driver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pbo {

inline constexpr double kDefaultAccuracyThreshold = 0.95;

struct RunRecord {
  std::string problem;
  std::string variant;
  int trial = 0;
  std::uint64_t seed = 0;
  /// f(x_best(N)) for N = 1, ..., N_max.
  std::vector<double> trace;
  double wall_seconds = 0.0;
};

/// (f(x_best(N)) - f(x_1)) / (f* - f(x_1)); 1 when f(x_1) already equals f*.
/// N is 1-based.
double accuracy(const RunRecord& record, double f_star, int N);

/// Smallest N with accuracy > t; nullopt when never reached.
std::optional<int> n_acc(const RunRecord& record, double f_star, double t = kDefaultAccuracyThreshold);

struct DataProfile {
  double t = kDefaultAccuracyThreshold;
  /// Fraction of records solved by N, index N - 1.
  std::vector<double> solved_fraction;
};

DataProfile data_profile(const std::vector<RunRecord>& records, double f_star,
                         double t = kDefaultAccuracyThreshold);

/// Median where not-reached ranks above every number. Even counts average
/// the two middle values and are not-reached if either of them is.
std::optional<double> median_n_acc(const std::vector<std::optional<int>>& values);

struct ProblemSummary {
  std::string problem;
  std::string variant;
  int trials = 0;
  std::optional<double> median_n_acc;
  double solved_fraction = 0.0;
  double mean_wall_seconds = 0.0;
};

ProblemSummary summarize(const std::vector<RunRecord>& records, double f_star,
                         double t = kDefaultAccuracyThreshold);

/// Per-N incumbent scores from a finished session, evaluated in original units.
RunRecord make_run_record(const BenchmarkProblem& problem, const std::string& variant, int trial,
                          std::uint64_t seed, const SessionState& state, double wall_seconds);

/// One full solve of `problem` against its synthetic decision-maker.
RunRecord run_trial(const BenchmarkProblem& problem, const SolverConfig& cfg, const std::string& variant,
                    int trial);

/// Trials 0..trials-1 with seeds mix_seed(base_seed, trial), spread over
/// `workers` threads (0 picks the hardware concurrency). Returned in trial order.
std::vector<RunRecord> run_trials(const BenchmarkProblem& problem, const SolverConfig& cfg,
                                  const std::string& variant, int trials, std::uint64_t base_seed,
                                  unsigned workers = 0);

}  // namespace pbo

#include "pbo/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace pbo {

double accuracy(const RunRecord& record, double f_star, int N) {
  if (record.trace.empty()) throw InputError("accuracy: empty trace");
  if (N < 1 || N > static_cast<int>(record.trace.size())) throw InputError("accuracy: N out of range");
  const double f1 = record.trace.front();
  if (f1 == f_star) return 1.0;
  const double gain = record.trace[static_cast<std::size_t>(N - 1)] - f1;
  return gain == 0.0 ? 0.0 : gain / (f_star - f1);
}

std::optional<int> n_acc(const RunRecord& record, double f_star, double t) {
  if (!(t > 0.0 && t < 1.0)) throw InputError("n_acc: threshold must lie in (0, 1)");
  for (int N = 1; N <= static_cast<int>(record.trace.size()); ++N) {
    if (accuracy(record, f_star, N) > t) return N;
  }
  return std::nullopt;
}

DataProfile data_profile(const std::vector<RunRecord>& records, double f_star, double t) {
  if (records.empty()) throw InputError("data_profile: no records");
  std::size_t len = 0;
  for (const auto& r : records) len = std::max(len, r.trace.size());
  DataProfile p;
  p.t = t;
  p.solved_fraction.assign(len, 0.0);
  for (const auto& r : records) {
    const auto n = n_acc(r, f_star, t);
    if (!n) continue;
    for (std::size_t N = static_cast<std::size_t>(*n); N <= len; ++N) p.solved_fraction[N - 1] += 1.0;
  }
  for (double& v : p.solved_fraction) v /= static_cast<double>(records.size());
  return p;
}

std::optional<double> median_n_acc(const std::vector<std::optional<int>>& values) {
  if (values.empty()) return std::nullopt;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> v;
  v.reserve(values.size());
  for (const auto& x : values) v.push_back(x ? static_cast<double>(*x) : inf);
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  const double hi = v[m / 2];
  const double med = m % 2 == 1 ? hi : 0.5 * (v[m / 2 - 1] + hi);
  if (med == inf) return std::nullopt;
  return med;
}

ProblemSummary summarize(const std::vector<RunRecord>& records, double f_star, double t) {
  ProblemSummary s;
  if (records.empty()) return s;
  s.problem = records.front().problem;
  s.variant = records.front().variant;
  s.trials = static_cast<int>(records.size());
  std::vector<std::optional<int>> n;
  int solved = 0;
  double wall = 0.0;
  for (const auto& r : records) {
    n.push_back(n_acc(r, f_star, t));
    if (n.back()) ++solved;
    wall += r.wall_seconds;
  }
  s.median_n_acc = median_n_acc(n);
  s.solved_fraction = static_cast<double>(solved) / static_cast<double>(records.size());
  s.mean_wall_seconds = wall / static_cast<double>(records.size());
  return s;
}

RunRecord make_run_record(const BenchmarkProblem& problem, const std::string& variant, int trial,
                          std::uint64_t seed, const SessionState& state, double wall_seconds) {
  RunRecord r;
  r.problem = problem.name;
  r.variant = variant;
  r.trial = trial;
  r.seed = seed;
  r.wall_seconds = wall_seconds;
  r.trace.reserve(state.best_trace.size());
  for (int idx : state.best_trace) {
    const Vector x = state.rescaler.inverse(state.dataset.samples[static_cast<std::size_t>(idx)]);
    r.trace.push_back(problem.scoring(x));
  }
  return r;
}

RunRecord run_trial(const BenchmarkProblem& problem, const SolverConfig& cfg, const std::string& variant,
                    int trial) {
  SyntheticDM dm(problem);
  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult res = solve(problem.constraints(), dm, cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return make_run_record(problem, variant, trial, cfg.seed, res.state, wall);
}

std::vector<RunRecord> run_trials(const BenchmarkProblem& problem, const SolverConfig& cfg,
                                  const std::string& variant, int trials, std::uint64_t base_seed,
                                  unsigned workers) {
  if (trials < 1) throw InputError("run_trials: trials must be positive");
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(trials));

  std::vector<RunRecord> out(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (int t = next++; t < trials; t = next++) {
      try {
        SolverConfig c = cfg;
        c.seed = mix_seed(base_seed, static_cast<std::uint64_t>(t));
        out[static_cast<std::size_t>(t)] = run_trial(problem, c, variant, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace pbo

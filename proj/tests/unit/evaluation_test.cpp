#include "pbo/evaluation.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace pbo;
using pbo::testing::Gen;

namespace {

RunRecord record_of(std::vector<double> trace) {
  RunRecord r;
  r.problem = "p";
  r.variant = "v";
  r.trace = std::move(trace);
  return r;
}

/// Trace starting at 10 that drops to 0 at sample `solved_at` (never if 0).
RunRecord solved_at(int solved_at, int len) {
  std::vector<double> t(static_cast<std::size_t>(len), 10.0);
  if (solved_at > 0) {
    for (int N = solved_at; N <= len; ++N) t[static_cast<std::size_t>(N - 1)] = 0.0;
  }
  return record_of(t);
}

}  // namespace

TEST(Accuracy, NoProgressIsZero) {
  const auto r = record_of({5.0, 5.0, 5.0});
  EXPECT_EQ(accuracy(r, 1.0, 3), 0.0);
}

TEST(Accuracy, OptimumIsOne) {
  const auto r = record_of({5.0, 3.0, 1.0});
  EXPECT_EQ(accuracy(r, 1.0, 3), 1.0);
}

TEST(Accuracy, HandArithmetic) {
  const auto r = record_of({10.0, 0.4});
  EXPECT_DOUBLE_EQ(accuracy(r, 0.0, 2), 0.96);
}

TEST(Accuracy, FirstSampleOptimal) {
  const auto r = record_of({0.0, 0.0});
  EXPECT_EQ(accuracy(r, 0.0, 1), 1.0);
  EXPECT_EQ(accuracy(r, 0.0, 2), 1.0);
}

TEST(Accuracy, RangeErrors) {
  const auto r = record_of({1.0});
  EXPECT_THROW(accuracy(r, 0.0, 0), InputError);
  EXPECT_THROW(accuracy(r, 0.0, 2), InputError);
  EXPECT_THROW(accuracy(record_of({}), 0.0, 1), InputError);
}

TEST(NAcc, SolvedImmediately) { EXPECT_EQ(n_acc(record_of({0.0, 0.0}), 0.0), 1); }

TEST(NAcc, NeverReached) { EXPECT_FALSE(n_acc(record_of({10.0, 6.0, 1.0}), 0.0)); }

TEST(NAcc, CrossingBetween30And31) {
  std::vector<double> t(40);
  for (int N = 1; N <= 40; ++N) t[static_cast<std::size_t>(N - 1)] = N <= 30 ? 10.0 - 0.3 * (N - 1) : 0.2;
  const auto r = record_of(t);
  EXPECT_LE(accuracy(r, 0.0, 30), 0.95);
  EXPECT_GT(accuracy(r, 0.0, 31), 0.95);
  EXPECT_EQ(n_acc(r, 0.0), 31);
}

TEST(NAcc, ThresholdIsStrict) {
  // acc = 0.95 exactly at N = 2 is not enough.
  const auto r = record_of({20.0, 1.0, 0.0});
  EXPECT_EQ(accuracy(r, 0.0, 2), 0.95);
  EXPECT_EQ(n_acc(r, 0.0), 3);
  EXPECT_THROW(n_acc(r, 0.0, 1.0), InputError);
  EXPECT_THROW(n_acc(r, 0.0, 0.0), InputError);
}

TEST(DataProfile, AllSolvedAtOne) {
  const auto p = data_profile({record_of({0.0, 0.0, 0.0}), record_of({1.0, 1.0, 1.0})}, 1.0);
  // The second record is already optimal at N = 1.
  EXPECT_EQ(p.solved_fraction, (std::vector<double>{0.5, 0.5, 0.5}));
  const auto q = data_profile({solved_at(1, 4), solved_at(1, 4)}, 0.0);
  EXPECT_EQ(q.solved_fraction, (std::vector<double>{1.0, 1.0, 1.0, 1.0}));
}

TEST(DataProfile, NoneSolved) {
  const auto p = data_profile({solved_at(0, 5), solved_at(0, 5)}, 0.0);
  EXPECT_EQ(p.solved_fraction, std::vector<double>(5, 0.0));
}

TEST(DataProfile, HalfSolvedBy50) {
  std::vector<RunRecord> rs;
  for (int n : {10, 20, 30, 40, 50}) rs.push_back(solved_at(n, 80));
  for (int i = 0; i < 5; ++i) rs.push_back(solved_at(0, 80));
  const auto p = data_profile(rs, 0.0);
  EXPECT_EQ(p.solved_fraction[49], 0.5);
  EXPECT_EQ(p.solved_fraction[79], 0.5);
  EXPECT_LT(p.solved_fraction[48], 0.5);
  EXPECT_THROW(data_profile({}, 0.0), InputError);
}

TEST(DataProfile, MonotoneInUnitInterval) {
  Gen gen(91);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RunRecord> rs;
    const int len = gen.integer(1, 60);
    for (int i = 0; i < gen.integer(1, 20); ++i) {
      std::vector<double> t{gen.uniform(1, 10)};
      for (int N = 1; N < len; ++N) t.push_back(std::max(0.0, t.back() - gen.uniform(0, 1)));
      rs.push_back(record_of(t));
    }
    const auto p = data_profile(rs, 0.0);
    for (std::size_t N = 0; N < p.solved_fraction.size(); ++N) {
      EXPECT_GE(p.solved_fraction[N], 0.0);
      EXPECT_LE(p.solved_fraction[N], 1.0);
      if (N > 0) EXPECT_GE(p.solved_fraction[N], p.solved_fraction[N - 1]);
    }
  }
}

TEST(MedianNAcc, OddAndEven) {
  EXPECT_EQ(median_n_acc({3, 1, 2}), 2.0);
  EXPECT_EQ(median_n_acc({4, 1, 2, 3}), 2.5);
  EXPECT_FALSE(median_n_acc({}));
}

TEST(MedianNAcc, NotReachedRanksLast) {
  EXPECT_EQ(median_n_acc({std::nullopt, 5, 7}), 7.0);
  EXPECT_FALSE(median_n_acc({std::nullopt, std::nullopt, 7}));
  EXPECT_FALSE(median_n_acc({std::nullopt, 5, 7, std::nullopt}));
  EXPECT_EQ(median_n_acc({std::nullopt, 5, 7, 9}), 8.0);
}

// 31% solved gives a not-reached median, 100% solved a numeric one.
TEST(Summary, TableIndicators) {
  std::vector<RunRecord> partial;
  for (int i = 0; i < 100; ++i) partial.push_back(i < 31 ? solved_at(30 + i % 5, 200) : solved_at(0, 200));
  const auto s = summarize(partial, 0.0);
  EXPECT_EQ(s.trials, 100);
  EXPECT_DOUBLE_EQ(s.solved_fraction, 0.31);
  EXPECT_FALSE(s.median_n_acc);

  std::vector<RunRecord> all;
  for (int i = 0; i < 100; ++i) {
    all.push_back(solved_at(21 + i % 3, 200));
    all.back().wall_seconds = i % 2 == 0 ? 1.0 : 3.0;
  }
  const auto t = summarize(all, 0.0);
  EXPECT_EQ(t.solved_fraction, 1.0);
  ASSERT_TRUE(t.median_n_acc);
  EXPECT_EQ(*t.median_n_acc, 22.0);
  EXPECT_DOUBLE_EQ(t.mean_wall_seconds, 2.0);
  EXPECT_EQ(t.problem, "p");
  EXPECT_EQ(t.variant, "v");
}

TEST(RunTrial, RecordMatchesSession) {
  const auto& p = benchmark_by_name("gramacy_lee");
  SolverConfig cfg;
  cfg.n_init = 4;
  cfg.n_max = 12;
  cfg.seed = 3;
  const auto r = run_trial(p, cfg, "glisp-r", 7);
  EXPECT_EQ(r.trial, 7);
  EXPECT_EQ(r.seed, 3u);
  EXPECT_EQ(r.problem, "gramacy_lee");
  ASSERT_EQ(r.trace.size(), 12u);
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1]);
  for (double f : r.trace) EXPECT_GE(f, p.f_star - 1e-9);

  SyntheticDM dm(p);
  const auto res = solve(p.constraints(), dm, cfg);
  const auto again = make_run_record(p, "glisp-r", 7, 3, res.state, 0.0);
  EXPECT_EQ(again.trace, r.trace);
}

TEST(RunTrials, WorkerCountDoesNotChangeResults) {
  const auto& p = benchmark_by_name("bemporad1d");
  SolverConfig cfg;
  cfg.n_init = 4;
  cfg.n_max = 10;
  const auto a = run_trials(p, cfg, "glisp-r", 4, 11, 1);
  const auto b = run_trials(p, cfg, "glisp-r", 4, 11, 3);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].trial, static_cast<int>(i));
    EXPECT_EQ(a[i].seed, mix_seed(11, i));
    EXPECT_EQ(a[i].trace, b[i].trace);
  }
  EXPECT_NE(a[0].seed, a[1].seed);
  EXPECT_THROW(run_trials(p, cfg, "glisp-r", 0, 11), InputError);
}

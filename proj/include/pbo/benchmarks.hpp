#pragma once

#include "pbo/driver.hpp"
#include "pbo/problem.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pbo {

struct BenchmarkProblem {
  std::string name;
  Vector lower;
  Vector upper;
  std::function<double(const Vector&)> scoring;
  double f_star = 0.0;
  Vector x_star;

  Eigen::Index dim() const noexcept { return lower.size(); }
  ConstraintSet constraints() const { return ConstraintSet(lower, upper); }
};

/// bemporad1d, gramacy_lee, ackley, bukin6, levy13, adjiman, rosenbrock5d,
/// step2_5d, salomon5d.
const std::vector<BenchmarkProblem>& benchmark_catalog();

/// Throws InputError for an unknown name.
const BenchmarkProblem& benchmark_by_name(const std::string& name);

/// Decision-maker that compares exact scoring values.
class SyntheticDM : public PreferenceOracle {
 public:
  explicit SyntheticDM(std::function<double(const Vector&)> scoring) : scoring_(std::move(scoring)) {}
  explicit SyntheticDM(const BenchmarkProblem& p) : scoring_(p.scoring) {}

  int query(const Vector& xi, const Vector& xj) override;
  int queries() const noexcept { return queries_; }

 private:
  std::function<double(const Vector&)> scoring_;
  int queries_ = 0;
};

/// Sign of f(xi) - f(xj) with no tolerance.
int synthetic_query(const std::function<double(const Vector&)>& f, const Vector& xi, const Vector& xj);

}  // namespace pbo

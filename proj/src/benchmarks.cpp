#include "pbo/benchmarks.hpp"

#include <cmath>
#include <numbers>

namespace pbo {

namespace {

using std::numbers::pi;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

double bemporad(const Vector& x) {
  const double t = x[0];
  const double a = 1.0 + t * std::sin(2.0 * t) * std::cos(3.0 * t) / (1.0 + t * t);
  return a * a + t * t / 12.0 + t / 10.0;
}

double gramacy_lee(const Vector& x) {
  const double t = x[0];
  return std::sin(10.0 * pi * t) / (2.0 * t) + std::pow(t - 1.0, 4);
}

double ackley(const Vector& x) {
  const double n = static_cast<double>(x.size());
  const double s2 = x.squaredNorm();
  double sc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sc += std::cos(2.0 * pi * x[i]);
  return -20.0 * std::exp(-0.2 * std::sqrt(s2 / n)) - std::exp(sc / n) + 20.0 + std::exp(1.0);
}

double bukin6(const Vector& x) {
  return 100.0 * std::sqrt(std::abs(x[1] - 0.01 * x[0] * x[0])) + 0.01 * std::abs(x[0] + 10.0);
}

double levy13(const Vector& x) {
  const double a = std::sin(3.0 * pi * x[0]);
  const double b = std::sin(3.0 * pi * x[1]);
  const double c = std::sin(2.0 * pi * x[1]);
  return a * a + (x[0] - 1.0) * (x[0] - 1.0) * (1.0 + b * b) + (x[1] - 1.0) * (x[1] - 1.0) * (1.0 + c * c);
}

double adjiman(const Vector& x) { return std::cos(x[0]) * std::sin(x[1]) - x[0] / (x[1] * x[1] + 1.0); }

double rosenbrock(const Vector& x) {
  double f = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = x[i] - 1.0;
    f += 100.0 * a * a + b * b;
  }
  return f;
}

double step2(const Vector& x) {
  double f = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double s = std::floor(x[i] + 0.5);
    f += s * s;
  }
  return f;
}

double salomon(const Vector& x) {
  const double r = x.norm();
  return 1.0 - std::cos(2.0 * pi * r) + 0.1 * r;
}

std::vector<BenchmarkProblem> make_catalog() {
  std::vector<BenchmarkProblem> c;
  c.push_back({"bemporad1d", vec({-3.0}), vec({3.0}), bemporad, 0.2795044960582651, vec({-0.9597685695048911})});
  c.push_back({"gramacy_lee", vec({0.5}), vec({2.5}), gramacy_lee, -0.8690111349894999, vec({0.54856344452798})});
  c.push_back({"ackley", vec({-35.0, -35.0}), vec({35.0, 35.0}), ackley, 0.0, vec({0.0, 0.0})});
  c.push_back({"bukin6", vec({-15.0, -3.0}), vec({-5.0, 3.0}), bukin6, 0.0, vec({-10.0, 1.0})});
  c.push_back({"levy13", vec({-10.0, -10.0}), vec({10.0, 10.0}), levy13, 0.0, vec({1.0, 1.0})});
  c.push_back({"adjiman", vec({-1.0, -1.0}), vec({2.0, 1.0}), adjiman, -2.021806783359787, vec({2.0, 0.10578347})});
  c.push_back({"rosenbrock5d", Vector::Constant(5, -30.0), Vector::Constant(5, 30.0), rosenbrock, 0.0,
               Vector::Ones(5)});
  c.push_back({"step2_5d", Vector::Constant(5, -100.0), Vector::Constant(5, 100.0), step2, 0.0, Vector::Zero(5)});
  c.push_back({"salomon5d", Vector::Constant(5, -100.0), Vector::Constant(5, 100.0), salomon, 0.0,
               Vector::Zero(5)});
  return c;
}

}  // namespace

const std::vector<BenchmarkProblem>& benchmark_catalog() {
  static const std::vector<BenchmarkProblem> catalog = make_catalog();
  return catalog;
}

const BenchmarkProblem& benchmark_by_name(const std::string& name) {
  for (const auto& p : benchmark_catalog()) {
    if (p.name == name) return p;
  }
  throw InputError("unknown benchmark problem '" + name + "'");
}

int synthetic_query(const std::function<double(const Vector&)>& f, const Vector& xi, const Vector& xj) {
  const double fi = f(xi);
  const double fj = f(xj);
  if (fi < fj) return -1;
  if (fi > fj) return 1;
  return 0;
}

int SyntheticDM::query(const Vector& xi, const Vector& xj) {
  ++queries_;
  return synthetic_query(scoring_, xi, xj);
}

}  // namespace pbo

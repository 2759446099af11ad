#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using PointSet = std::vector<Vector>;

/// Bad arguments: wrong dimensions, out-of-range parameters, malformed configs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A function was evaluated outside its domain of definition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative numerical routine failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, int iterations)
      : std::runtime_error(what + " (after " + std::to_string(iterations) + " iterations)"),
        iterations_(iterations) {}

  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

/// A preference oracle violated the query protocol.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// splitmix64 finalizer; derives independent stream seeds from (base, tag) pairs.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline void require_dim(const Vector& x, Eigen::Index n, const char* what) {
  if (x.size() != n) {
    throw InputError(std::string(what) + ": expected dimension " + std::to_string(n) + ", got " +
                     std::to_string(x.size()));
  }
}

}  // namespace pbo

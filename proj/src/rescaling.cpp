#include "pbo/rescaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace pbo {

namespace {

std::size_t nearest(const PointSet& centers, const Vector& x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = (x - centers[c]).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

PointSet seed_plus_plus(const PointSet& points, int k, std::mt19937_64& rng) {
  PointSet centers;
  centers.reserve(static_cast<std::size_t>(k));
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  centers.push_back(points[pick(rng)]);
  std::vector<double> d2(points.size());
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      d2[i] = (points[i] - centers[nearest(centers, points[i])]).squaredNorm();
      total += d2[i];
    }
    if (total <= 0.0) {
      centers.push_back(points[pick(rng)]);
      continue;
    }
    std::uniform_real_distribution<double> u(0.0, total);
    const double target = u(rng);
    double acc = 0.0;
    std::size_t chosen = points.size() - 1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      acc += d2[i];
      if (acc >= target && d2[i] > 0.0) {
        chosen = i;
        break;
      }
    }
    centers.push_back(points[chosen]);
  }
  return centers;
}

bool contains(const PointSet& set, const Vector& x, double tol) {
  return std::any_of(set.begin(), set.end(), [&](const Vector& p) { return (p - x).norm() <= tol; });
}

}  // namespace

PointSet kmeans(const PointSet& points, int k, std::uint64_t seed) {
  if (k < 1) throw InputError("kmeans: k must be positive");
  if (points.size() < static_cast<std::size_t>(k)) throw InputError("kmeans: fewer points than clusters");
  const auto dim = points.front().size();
  for (const auto& p : points) require_dim(p, dim, "kmeans");

  std::mt19937_64 rng(seed);
  PointSet centers = seed_plus_plus(points, k, rng);
  std::vector<std::size_t> assign(points.size(), 0);

  for (int it = 0; it < kKmeansMaxIter; ++it) {
    bool changed = it == 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::size_t c = nearest(centers, points[i]);
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    PointSet sums(static_cast<std::size_t>(k), Vector::Zero(dim));
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      sums[assign[i]] += points[i];
      ++counts[assign[i]];
    }
    for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
      if (counts[c] > 0) {
        centers[c] = sums[c] / counts[c];
        continue;
      }
      // Empty cluster: move it to the point farthest from its own center.
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = (points[i] - centers[assign[i]]).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      centers[c] = points[far];
      assign[far] = c;
      changed = true;
    }
    if (!changed) break;
  }
  return centers;
}

int augmented_cardinality(int num_samples, int k_aug) {
  const int kc = (num_samples > k_aug ? k_aug : num_samples) + 2;
  return num_samples + kc * (kc - 1) / 2 + 2;
}

AugmentedSet augment(const PointSet& samples, int k_aug, const Vector& lower, const Vector& upper,
                     std::uint64_t seed) {
  if (samples.empty()) throw InputError("augment: sample set is empty");
  if (k_aug < 1) throw InputError("augment: k_aug must be positive");
  const auto dim = samples.front().size();
  require_dim(lower, dim, "augment lower");
  require_dim(upper, dim, "augment upper");

  PointSet xc = samples.size() > static_cast<std::size_t>(k_aug) ? kmeans(samples, k_aug, seed) : samples;
  xc.push_back(lower);
  xc.push_back(upper);

  AugmentedSet out;
  out.k_aug = k_aug;
  out.source_count = static_cast<int>(samples.size());
  out.points = samples;
  auto add = [&](const Vector& p) {
    if (!contains(out.points, p, kDedupTol)) out.points.push_back(p);
  };
  add(lower);
  add(upper);
  for (std::size_t i = 0; i < xc.size(); ++i) {
    for (std::size_t j = i + 1; j < xc.size(); ++j) add(0.5 * (xc[i] + xc[j]));
  }
  return out;
}

MinMaxStats minmax_stats(const std::vector<double>& values) {
  if (values.empty()) throw InputError("minmax_stats: empty value list");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  MinMaxStats s{*lo, *hi, 1.0};
  const double range = s.h_max - s.h_min;
  if (range > 0.0) {
    s.delta_h = range;
  } else if (s.h_max != 0.0) {
    s.delta_h = std::abs(s.h_max);
  }
  return s;
}

double rescale(double h, const MinMaxStats& stats) noexcept { return (h - stats.h_min) / stats.delta_h; }

}  // namespace pbo

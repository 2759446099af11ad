#pragma once

#include "pbo/types.hpp"

#include <cstdint>
#include <vector>

namespace pbo {

inline constexpr double kDedupTol = 1e-9;
inline constexpr int kKmeansMaxIter = 300;

/// Lloyd iterations with k-means++ seeding. Requires at least k points.
PointSet kmeans(const PointSet& points, int k, std::uint64_t seed);

/// Samples, pairwise midpoints of the cluster centers (plus l and u), and
/// the corners l and u themselves.
struct AugmentedSet {
  PointSet points;
  int k_aug = 0;
  int source_count = 0;
};

AugmentedSet augment(const PointSet& samples, int k_aug, const Vector& lower, const Vector& upper,
                     std::uint64_t seed);

/// Size the augmented set would have before deduplication.
int augmented_cardinality(int num_samples, int k_aug);

struct MinMaxStats {
  double h_min = 0.0;
  double h_max = 0.0;
  double delta_h = 1.0;
};

/// Range statistics; a degenerate range uses |h_max|, or 1 when h_max is 0.
MinMaxStats minmax_stats(const std::vector<double>& values);

double rescale(double h, const MinMaxStats& stats) noexcept;

}  // namespace pbo

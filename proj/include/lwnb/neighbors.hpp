#pragma once

#include <span>
#include <vector>

#include "lwnb/errors.hpp"

namespace lwnb {

/// Row-major store of transformed (normalized, binarized) training vectors
/// plus the per-dimension missing-value penalties of their space.
struct FeatureMatrix {
  int rows = 0;
  int dims = 0;
  std::vector<double> data;     // rows * dims
  std::vector<double> penalty;  // dims

  std::span<const double> row(int i) const {
    return {data.data() + static_cast<std::size_t>(i) * dims,
            static_cast<std::size_t>(dims)};
  }
};

/// Euclidean distance between two vectors of the same transformed space.
/// A dimension where either side is missing (NaN) contributes the maximum
/// possible squared difference given by `penalty`.
double squared_distance(std::span<const double> a, std::span<const double> b,
                        std::span<const double> penalty);
double distance(std::span<const double> a, std::span<const double> b,
                std::span<const double> penalty);

struct Neighbor {
  int index;
  double dist;
};

/// Neighbors sorted by ascending (distance, index). Contains every training
/// instance with distance <= bandwidth, so under ties at the bandwidth the
/// size r may exceed the requested k.
struct NeighborSet {
  std::vector<Neighbor> items;
  double bandwidth = 0.0;  // d_k, distance of the k-th nearest neighbor

  int r() const { return static_cast<int>(items.size()); }
};

/// Exact k-nearest-neighbour retrieval by linear scan.
/// Requires 1 <= k <= train.rows.
NeighborSet k_nearest(const FeatureMatrix& train, std::span<const double> query,
                      int k);

}  // namespace lwnb

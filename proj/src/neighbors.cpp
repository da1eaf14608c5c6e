#include "lwnb/neighbors.hpp"

#include <algorithm>
#include <cmath>

#include "lwnb/simd/kernels.hpp"

namespace lwnb {

double squared_distance(std::span<const double> a, std::span<const double> b,
                        std::span<const double> penalty) {
  if (a.size() != b.size() || a.size() != penalty.size())
    throw InvalidArgument("distance: dimension mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  return simd::masked_sqdist(a.data(), b.data(), penalty.data(), a.size());
}

double distance(std::span<const double> a, std::span<const double> b,
                std::span<const double> penalty) {
  return std::sqrt(squared_distance(a, b, penalty));
}

NeighborSet k_nearest(const FeatureMatrix& train, std::span<const double> query,
                      int k) {
  if (k < 1)
    throw InvalidArgument("k_nearest: k must be at least 1");
  if (k > train.rows)
    throw InvalidArgument("k_nearest: k=" + std::to_string(k) +
                          " exceeds training size " + std::to_string(train.rows));
  if (static_cast<int>(query.size()) != train.dims)
    throw InvalidArgument("k_nearest: query dimension mismatch");

  std::vector<double> sq(train.rows);
  simd::masked_sqdist_batch(query.data(), train.data.data(), train.rows,
                            train.dims, train.penalty.data(), sq.data());

  // k-th smallest squared distance is the bandwidth; everything at or below
  // it is retained, so ties at the bandwidth all come along.
  std::vector<double> sel(sq);
  std::nth_element(sel.begin(), sel.begin() + (k - 1), sel.end());
  const double sq_bandwidth = sel[k - 1];

  NeighborSet out;
  out.items.reserve(k);
  for (int i = 0; i < train.rows; ++i)
    if (sq[i] <= sq_bandwidth) out.items.push_back({i, std::sqrt(sq[i])});
  std::sort(out.items.begin(), out.items.end(),
            [](const Neighbor& a, const Neighbor& b) {
              return a.dist != b.dist ? a.dist < b.dist : a.index < b.index;
            });
  out.bandwidth = std::sqrt(sq_bandwidth);
  return out;
}

}  // namespace lwnb

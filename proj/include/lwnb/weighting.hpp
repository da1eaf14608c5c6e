#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lwnb/neighbors.hpp"

namespace lwnb {

/// A weighting function of the distance ratio y = d_i/d_k. Candidates are
/// monotonically decreasing with f(y) = 0 for y >= 1.
using KernelFn = std::function<double(double)>;

/// 1 - y on [0,1), 0 for y >= 1. Throws on negative input.
double linear_kernel(double y);

/// Raw kernel weights of a neighbor set, one per retained neighbor in the
/// set's order: w_i = kernel(d_i / d_k). Degenerate neighborhoods where the
/// kernel cannot discriminate — every retained distance equals the
/// bandwidth, which includes the all-duplicates case d_k = 0 — fall back to
/// uniform weight 1 so the total weight stays positive.
std::vector<double> compute_weights(const NeighborSet& nbrs,
                                    const KernelFn& kernel = linear_kernel);

/// Rescales raw weights so their sum equals r, the number of retained
/// neighbors: w'_i = w_i * r / sum(w). Throws if the raw sum is not
/// positive (cannot happen after compute_weights' degenerate rule).
std::vector<double> rescale_weights(std::span<const double> raw, int r);

struct WeightVector {
  std::vector<double> raw;
  std::vector<double> rescaled;
  int r = 0;
};

WeightVector weigh_neighbors(const NeighborSet& nbrs,
                             const KernelFn& kernel = linear_kernel);

}  // namespace lwnb

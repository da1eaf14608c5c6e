#include "lwnb/weighting.hpp"

#include <numeric>

namespace lwnb {

double linear_kernel(double y) {
  if (y < 0.0) throw InvalidArgument("linear_kernel: negative distance ratio");
  return y >= 1.0 ? 0.0 : 1.0 - y;
}

std::vector<double> compute_weights(const NeighborSet& nbrs,
                                    const KernelFn& kernel) {
  if (nbrs.items.empty())
    throw InvalidArgument("compute_weights: empty neighbor set");

  const double dk = nbrs.bandwidth;
  bool all_at_bandwidth = true;
  for (const Neighbor& nb : nbrs.items)
    if (nb.dist < dk) {
      all_at_bandwidth = false;
      break;
    }
  if (dk == 0.0 || all_at_bandwidth)
    return std::vector<double>(nbrs.items.size(), 1.0);

  std::vector<double> w;
  w.reserve(nbrs.items.size());
  for (const Neighbor& nb : nbrs.items) w.push_back(kernel(nb.dist / dk));
  return w;
}

std::vector<double> rescale_weights(std::span<const double> raw, int r) {
  double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (!(sum > 0.0))
    throw InvalidArgument("rescale_weights: total raw weight is not positive");
  std::vector<double> out(raw.begin(), raw.end());
  const double scale = static_cast<double>(r) / sum;
  for (double& w : out) w *= scale;
  return out;
}

WeightVector weigh_neighbors(const NeighborSet& nbrs, const KernelFn& kernel) {
  WeightVector wv;
  wv.raw = compute_weights(nbrs, kernel);
  wv.r = nbrs.r();
  wv.rescaled = rescale_weights(wv.raw, wv.r);
  return wv;
}

}  // namespace lwnb

#pragma once

#include <cstdint>

#include "lwnb/dataset.hpp"

namespace lwnb {

enum class SyntheticKind { two_spheres, checkers };

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::two_spheres;
  int n = 1000;  // total instance count
  std::uint64_t seed = 0;
};

/// Two concentric classes in 3-D: "inner" uniform in the solid ball of
/// radius 0.5, "outer" uniform in the hollow shell 0.5 < r <= 1. Attributes
/// x, y, z plus the class; inner instances come first. Deterministic given
/// the seed (own samplers, no library distributions).
Dataset gen_two_spheres(int n_per_class, std::uint64_t seed);

/// Checkerboard in the unit square with 8x8 cells of side 0.125: x and y
/// uniform in [0,1), class "black" on even (col+row) parity, "white" on odd.
Dataset gen_checkers(int n, std::uint64_t seed);

/// Dispatch on spec.kind. two_spheres reads spec.n as the total count and
/// requires it even (n/2 per class).
Dataset gen_synthetic(const SyntheticSpec& spec);

}  // namespace lwnb

#include "lwnb/generators.hpp"

#include <cmath>

#include "lwnb/errors.hpp"
#include "lwnb/rng.hpp"

namespace lwnb {
namespace {

/// Uniform and normal draws built directly on the engine's raw output so
/// generated datasets are identical across standard libraries (the
/// std::*_distribution algorithms are implementation-defined).
struct Sampler {
  std::mt19937_64 rng;
  double spare = 0.0;
  bool has_spare = false;

  explicit Sampler(std::uint64_t seed) : rng(make_rng(seed)) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return (rng() >> 11) * 0x1.0p-53; }

  /// Standard normal via the Marsaglia polar method.
  double gaussian() {
    if (has_spare) {
      has_spare = false;
      return spare;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare = v * f;
    has_spare = true;
    return u * f;
  }

  /// Uniform direction on the unit sphere.
  void direction(double out[3]) {
    double norm;
    do {
      for (int d = 0; d < 3; ++d) out[d] = gaussian();
      norm = std::sqrt(out[0] * out[0] + out[1] * out[1] + out[2] * out[2]);
    } while (norm == 0.0);
    for (int d = 0; d < 3; ++d) out[d] /= norm;
  }
};

DatasetSchema spheres_schema() {
  std::vector<AttributeSpec> attrs(4);
  attrs[0] = {"x", AttrKind::numeric, {}};
  attrs[1] = {"y", AttrKind::numeric, {}};
  attrs[2] = {"z", AttrKind::numeric, {}};
  attrs[3] = {"class", AttrKind::nominal, {"inner", "outer"}};
  return DatasetSchema(std::move(attrs), 3);
}

Instance point_instance(const double p[3], int cls) {
  Instance inst;
  inst.values = {Cell::numeric(p[0]), Cell::numeric(p[1]), Cell::numeric(p[2]),
                 Cell::nominal(cls)};
  return inst;
}

}  // namespace

Dataset gen_two_spheres(int n_per_class, std::uint64_t seed) {
  if (n_per_class < 1)
    throw InvalidArgument("gen_two_spheres: n_per_class must be >= 1");
  Sampler s(seed);
  std::vector<Instance> rows;
  rows.reserve(2 * static_cast<std::size_t>(n_per_class));

  // Uniform density in a radial region means the CUBE of the radius is
  // uniform over the region's cube range. Inner ball: r^3 in [0, 0.125).
  for (int i = 0; i < n_per_class; ++i) {
    double p[3];
    s.direction(p);
    const double r = std::cbrt(s.uniform01() * 0.125);
    for (double& c : p) c *= r;
    rows.push_back(point_instance(p, 0));
  }
  // Hollow shell: r^3 in (0.125, 1], so radii land in (0.5, 1] exactly.
  for (int i = 0; i < n_per_class; ++i) {
    double p[3];
    s.direction(p);
    const double r = std::cbrt(0.125 + (1.0 - s.uniform01()) * 0.875);
    for (double& c : p) c *= r;
    rows.push_back(point_instance(p, 1));
  }
  return Dataset(spheres_schema(), std::move(rows));
}

Dataset gen_checkers(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("gen_checkers: n must be >= 1");
  std::vector<AttributeSpec> attrs(3);
  attrs[0] = {"x", AttrKind::numeric, {}};
  attrs[1] = {"y", AttrKind::numeric, {}};
  attrs[2] = {"class", AttrKind::nominal, {"black", "white"}};
  DatasetSchema schema(std::move(attrs), 2);

  Sampler s(seed);
  std::vector<Instance> rows;
  rows.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double x = s.uniform01();
    const double y = s.uniform01();
    const int cell = static_cast<int>(std::floor(x / 0.125)) +
                     static_cast<int>(std::floor(y / 0.125));
    Instance inst;
    inst.values = {Cell::numeric(x), Cell::numeric(y), Cell::nominal(cell % 2)};
    rows.push_back(std::move(inst));
  }
  return Dataset(std::move(schema), std::move(rows));
}

Dataset gen_synthetic(const SyntheticSpec& spec) {
  if (spec.kind == SyntheticKind::two_spheres) {
    if (spec.n < 2 || spec.n % 2 != 0)
      throw InvalidArgument(
          "two_spheres: n must be even (half per class) and >= 2");
    return gen_two_spheres(spec.n / 2, spec.seed);
  }
  return gen_checkers(spec.n, spec.seed);
}

}  // namespace lwnb

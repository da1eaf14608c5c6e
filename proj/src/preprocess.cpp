#include "lwnb/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lwnb {

namespace {

std::vector<int> all_indices(const Dataset& d) {
  std::vector<int> idx(d.size());
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

}  // namespace

Normalizer Normalizer::fit(const Dataset& d, std::span<const int> indices) {
  const DatasetSchema& schema = d.schema();
  Normalizer norm;
  norm.ranges_.resize(schema.attribute_count());
  for (int j = 0; j < schema.attribute_count(); ++j) {
    if (!schema.attribute(j).is_numeric()) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i : indices) {
      const Cell& c = d.instance(i).cell(j);
      if (c.is_missing()) continue;
      lo = std::min(lo, c.as_numeric());
      hi = std::max(hi, c.as_numeric());
    }
    if (lo > hi) lo = hi = 0.0;  // no observed values
    norm.ranges_[j] = {lo, hi};
  }
  return norm;
}

Normalizer Normalizer::fit(const Dataset& d) {
  return fit(d, all_indices(d));
}

double Normalizer::apply_value(int attr, double v) const {
  const Range& r = ranges_[attr];
  if (r.max <= r.min) return 0.0;  // constant attribute
  double z = (v - r.min) / (r.max - r.min);
  return std::clamp(z, 0.0, 1.0);
}

Instance Normalizer::apply(const DatasetSchema& schema,
                           const Instance& inst) const {
  Instance out = inst;
  for (int j = 0; j < schema.attribute_count(); ++j) {
    const Cell& c = inst.cell(j);
    if (schema.attribute(j).is_numeric() && !c.is_missing())
      out.values[j] = Cell::numeric(apply_value(j, c.as_numeric()));
  }
  return out;
}

Binarizer Binarizer::fit(const DatasetSchema& schema) {
  Binarizer b;
  b.blocks_.resize(schema.attribute_count());
  int offset = 0;
  for (int j : schema.predictive_indices()) {
    const AttributeSpec& a = schema.attribute(j);
    int width = a.is_numeric() ? 1 : a.cardinality();
    b.blocks_[j] = {offset, width};
    if (a.is_numeric()) {
      b.penalties_.push_back(1.0);
    } else {
      // A masked nominal block must contribute 2 in total, the squared
      // distance of two mismatching one-hot vectors. The block is always
      // masked as a whole, so the penalty can sit on its first dimension.
      b.penalties_.push_back(2.0);
      for (int v = 1; v < width; ++v) b.penalties_.push_back(0.0);
    }
    offset += width;
  }
  b.dims_ = offset;
  return b;
}

void Binarizer::encode(const DatasetSchema& schema, const Instance& inst,
                       std::span<double> out) const {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int j : schema.predictive_indices()) {
    const Block& blk = blocks_[j];
    const Cell& c = inst.cell(j);
    if (schema.attribute(j).is_numeric()) {
      out[blk.offset] = c.is_missing() ? nan : c.as_numeric();
    } else if (c.is_missing()) {
      for (int v = 0; v < blk.width; ++v) out[blk.offset + v] = nan;
    } else {
      for (int v = 0; v < blk.width; ++v) out[blk.offset + v] = 0.0;
      int idx = c.as_nominal();
      if (idx >= 0 && idx < blk.width) out[blk.offset + idx] = 1.0;
    }
  }
}

std::vector<double> Binarizer::encode(const DatasetSchema& schema,
                                      const Instance& inst) const {
  std::vector<double> out(dims_);
  encode(schema, inst, out);
  return out;
}

double class_entropy(std::span<const double> counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  if (total <= 0.0) return 0.0;
  double ent = 0.0;
  for (double c : counts) {
    if (c <= 0.0) continue;
    double p = c / total;
    ent -= p * std::log2(p);
  }
  return ent;
}

namespace {

struct ValueGroup {
  double value = 0.0;
  std::vector<int> counts;  // per class
  int total = 0;
};

int classes_present(std::span<const double> counts) {
  int c = 0;
  for (double v : counts) c += v > 0.0;
  return c;
}

bool pure_same_class(const ValueGroup& a, const ValueGroup& b) {
  int ca = -1, cb = -1;
  for (std::size_t l = 0; l < a.counts.size(); ++l) {
    if (a.counts[l] == a.total && a.counts[l] > 0) ca = static_cast<int>(l);
    if (b.counts[l] == b.total && b.counts[l] > 0) cb = static_cast<int>(l);
  }
  return ca >= 0 && ca == cb;
}

// Recursive MDL cut search over value groups [lo, hi). Cuts are appended in
// ascending order because the left half recurses before the right.
void find_cuts(const std::vector<ValueGroup>& groups, int lo, int hi,
               int n_classes, std::vector<double>& out) {
  if (hi - lo < 2) return;

  std::vector<double> total(n_classes, 0.0);
  double n = 0.0;
  for (int g = lo; g < hi; ++g) {
    for (int l = 0; l < n_classes; ++l) total[l] += groups[g].counts[l];
    n += groups[g].total;
  }
  if (n < 2) return;
  const double ent = class_entropy(total);

  // Sweep boundaries left to right with running counts; ties in gain keep
  // the smallest cut value, so only strict improvements replace the best.
  std::vector<double> left(n_classes, 0.0);
  double n_left = 0.0;
  int best_g = -1;
  double best_gain = -1.0;
  std::vector<double> best_left;
  for (int g = lo; g < hi - 1; ++g) {
    for (int l = 0; l < n_classes; ++l) left[l] += groups[g].counts[l];
    n_left += groups[g].total;
    if (pure_same_class(groups[g], groups[g + 1])) continue;  // not a boundary
    std::vector<double> right(n_classes);
    for (int l = 0; l < n_classes; ++l) right[l] = total[l] - left[l];
    double gain = ent - (n_left / n) * class_entropy(left) -
                  ((n - n_left) / n) * class_entropy(right);
    if (gain > best_gain + 1e-12) {
      best_gain = gain;
      best_g = g;
      best_left = left;
    }
  }
  if (best_g < 0) return;

  std::vector<double> best_right(n_classes);
  for (int l = 0; l < n_classes; ++l) best_right[l] = total[l] - best_left[l];
  const double c = classes_present(total);
  const double c1 = classes_present(best_left);
  const double c2 = classes_present(best_right);
  const double delta = std::log2(std::pow(3.0, c) - 2.0) -
                       (c * ent - c1 * class_entropy(best_left) -
                        c2 * class_entropy(best_right));
  const double threshold = (std::log2(n - 1.0) + delta) / n;
  if (!(best_gain > threshold)) return;

  find_cuts(groups, lo, best_g + 1, n_classes, out);
  out.push_back((groups[best_g].value + groups[best_g + 1].value) / 2.0);
  find_cuts(groups, best_g + 1, hi, n_classes, out);
}

}  // namespace

Discretizer Discretizer::fit(const Dataset& d, std::span<const int> indices) {
  const DatasetSchema& schema = d.schema();
  const int n_classes = schema.class_count();
  Discretizer disc;
  disc.cuts_.resize(schema.attribute_count());

  for (int j = 0; j < schema.attribute_count(); ++j) {
    if (!schema.attribute(j).is_numeric()) continue;

    std::vector<std::pair<double, int>> pairs;  // (value, class)
    for (int i : indices) {
      const Cell& c = d.instance(i).cell(j);
      if (c.is_missing()) continue;
      pairs.emplace_back(c.as_numeric(), d.class_of(i));
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<ValueGroup> groups;
    for (const auto& [v, cls] : pairs) {
      if (groups.empty() || groups.back().value != v) {
        groups.push_back({v, std::vector<int>(n_classes, 0), 0});
      }
      groups.back().counts[cls]++;
      groups.back().total++;
    }
    find_cuts(groups, 0, static_cast<int>(groups.size()), n_classes,
              disc.cuts_[j]);
  }
  return disc;
}

Discretizer Discretizer::fit(const Dataset& d) {
  return fit(d, all_indices(d));
}

int Discretizer::interval_of(std::span<const double> cuts, double v) {
  // First cut with v <= cut; above the last cut falls into the last interval.
  return static_cast<int>(
      std::lower_bound(cuts.begin(), cuts.end(), v) - cuts.begin());
}

DatasetSchema Discretizer::discretized_schema(
    const DatasetSchema& original) const {
  std::vector<AttributeSpec> attrs = original.attributes();
  for (int j = 0; j < original.attribute_count(); ++j) {
    if (!attrs[j].is_numeric()) continue;
    AttributeSpec spec;
    spec.name = attrs[j].name;
    spec.kind = AttrKind::nominal;
    const int n_bins = static_cast<int>(cuts_[j].size()) + 1;
    for (int b = 0; b < n_bins; ++b)
      spec.values.push_back("bin" + std::to_string(b));
    attrs[j] = std::move(spec);
  }
  return DatasetSchema(std::move(attrs), original.class_index());
}

Instance Discretizer::apply(const DatasetSchema& original,
                            const Instance& inst) const {
  Instance out = inst;
  for (int j = 0; j < original.attribute_count(); ++j) {
    if (!original.attribute(j).is_numeric()) continue;
    const Cell& c = inst.cell(j);
    if (c.is_missing()) continue;
    out.values[j] = Cell::nominal(interval_of(cuts_[j], c.as_numeric()));
  }
  return out;
}

}  // namespace lwnb

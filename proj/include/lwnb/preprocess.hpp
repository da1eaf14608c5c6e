#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lwnb/dataset.hpp"

namespace lwnb {

/// Min-max rescaling of numeric attributes to [0,1], fitted on training data
/// only. Out-of-range values seen at apply time are clipped; a constant
/// attribute (min == max) maps to 0.
class Normalizer {
 public:
  struct Range {
    double min = 0.0;
    double max = 0.0;
  };

  static Normalizer fit(const Dataset& d, std::span<const int> indices);
  static Normalizer fit(const Dataset& d);

  const Range& range(int attr) const { return ranges_[attr]; }
  double apply_value(int attr, double v) const;
  /// Maps every numeric cell; nominal and missing cells pass through.
  Instance apply(const DatasetSchema& schema, const Instance& inst) const;

 private:
  std::vector<Range> ranges_;  // indexed by attribute; numeric entries only
};

/// Layout of the distance space: numeric attributes keep one dimension,
/// nominal attributes expand to one indicator dimension per declared value.
/// Missing cells encode as NaN across their whole block; the per-dimension
/// penalty array carries the maximum squared contribution a masked dimension
/// adds (1 for a numeric, 2 spread over a nominal block).
class Binarizer {
 public:
  struct Block {
    int offset = 0;
    int width = 0;
  };

  static Binarizer fit(const DatasetSchema& schema);

  int dims() const { return dims_; }
  const Block& block(int attr) const { return blocks_[attr]; }
  const std::vector<double>& penalties() const { return penalties_; }

  /// Encodes one instance into `out` (size dims()). Numeric cells must
  /// already be normalized; nominal cells become one-hot blocks.
  void encode(const DatasetSchema& schema, const Instance& inst,
              std::span<double> out) const;
  std::vector<double> encode(const DatasetSchema& schema,
                             const Instance& inst) const;

 private:
  int dims_ = 0;
  std::vector<Block> blocks_;      // indexed by attribute; class attr width 0
  std::vector<double> penalties_;  // indexed by dimension
};

/// Entropy-based recursive binary discretization of numeric attributes.
/// Candidate cuts are midpoints between consecutive distinct values whose
/// adjacent groups are not pure in the same class; a cut is accepted iff
///
///   gain > (log2(N-1) + log2(3^c - 2) - (c*ent - c1*ent1 - c2*ent2)) / N
///
/// with c, c1, c2 the number of classes present in the interval and its two
/// halves. Accepted cuts recurse independently into each half.
class Discretizer {
 public:
  static Discretizer fit(const Dataset& d, std::span<const int> indices);
  static Discretizer fit(const Dataset& d);

  const std::vector<double>& cuts(int attr) const { return cuts_[attr]; }

  /// Interval index of v: intervals are closed on the right, so
  /// cut[i-1] < v <= cut[i] maps to i and anything above the last cut goes
  /// to the last interval.
  static int interval_of(std::span<const double> cuts, double v);

  /// Schema with every numeric attribute replaced by a nominal one of
  /// cardinality #cuts + 1.
  DatasetSchema discretized_schema(const DatasetSchema& original) const;
  Instance apply(const DatasetSchema& original, const Instance& inst) const;

 private:
  std::vector<std::vector<double>> cuts_;  // indexed by attribute
};

/// Shannon entropy (log2) of a class-count vector.
double class_entropy(std::span<const double> counts);

}  // namespace lwnb

#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lwnb/errors.hpp"

namespace lwnb {

enum class AttrKind { nominal, numeric };

/// One attribute of a schema. Nominal attributes carry their value list in
/// first-occurrence order; indices into it are stable for the lifetime of
/// the schema.
struct AttributeSpec {
  std::string name;
  AttrKind kind = AttrKind::numeric;
  std::vector<std::string> values;  // nominal only, non-empty, no duplicates

  int cardinality() const { return static_cast<int>(values.size()); }
  bool is_nominal() const { return kind == AttrKind::nominal; }
  bool is_numeric() const { return kind == AttrKind::numeric; }
};

class DatasetSchema {
 public:
  DatasetSchema() = default;
  /// Validates: unique names, nominal value lists non-empty and duplicate
  /// free, class attribute nominal.
  DatasetSchema(std::vector<AttributeSpec> attributes, int class_index);

  int attribute_count() const { return static_cast<int>(attributes_.size()); }
  const AttributeSpec& attribute(int j) const { return attributes_[j]; }
  const std::vector<AttributeSpec>& attributes() const { return attributes_; }
  int class_index() const { return class_index_; }
  const AttributeSpec& class_attribute() const { return attributes_[class_index_]; }
  /// o, the number of classes.
  int class_count() const { return class_attribute().cardinality(); }
  /// Indices of all predictive (non-class) attributes, in schema order.
  const std::vector<int>& predictive_indices() const { return predictive_; }

 private:
  std::vector<AttributeSpec> attributes_;
  int class_index_ = -1;
  std::vector<int> predictive_;
};

/// A single attribute value: a numeric real, a nominal value index, or
/// missing. The kind must match the schema's attribute kind.
class Cell {
 public:
  Cell() = default;

  static Cell missing() { return Cell(); }
  static Cell numeric(double v) {
    Cell c;
    c.kind_ = Kind::numeric;
    c.num_ = v;
    return c;
  }
  static Cell nominal(int index) {
    Cell c;
    c.kind_ = Kind::nominal;
    c.nom_ = index;
    return c;
  }

  bool is_missing() const { return kind_ == Kind::missing; }
  bool is_numeric() const { return kind_ == Kind::numeric; }
  bool is_nominal() const { return kind_ == Kind::nominal; }
  double as_numeric() const { return num_; }
  int as_nominal() const { return nom_; }

  bool operator==(const Cell& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
      case Kind::missing: return true;
      case Kind::numeric: return num_ == other.num_;
      case Kind::nominal: return nom_ == other.nom_;
    }
    return false;
  }

 private:
  enum class Kind : std::uint8_t { missing, numeric, nominal };
  Kind kind_ = Kind::missing;
  double num_ = 0.0;
  int nom_ = -1;
};

/// Attribute values aligned with the schema's attribute order; the class
/// attribute occupies its schema position like any other cell.
struct Instance {
  std::vector<Cell> values;

  const Cell& cell(int j) const { return values[j]; }
  int class_label(const DatasetSchema& schema) const {
    return values[schema.class_index()].as_nominal();
  }
};

class Dataset {
 public:
  Dataset() = default;
  /// Validates every instance against the schema: cell kinds match, nominal
  /// indices are within the declared cardinality.
  Dataset(DatasetSchema schema, std::vector<Instance> instances);

  const DatasetSchema& schema() const { return schema_; }
  int size() const { return static_cast<int>(instances_.size()); }
  const Instance& instance(int i) const { return instances_[i]; }
  const std::vector<Instance>& instances() const { return instances_; }
  int class_of(int i) const { return instances_[i].class_label(schema_); }

 private:
  DatasetSchema schema_;
  std::vector<Instance> instances_;
};

struct CsvConfig {
  /// Name of the class column; empty selects the last column.
  std::string class_column;
  std::string missing_token = "?";
  /// Per-column kind overrides. Columns not listed are numeric iff every
  /// non-missing cell parses as a finite real.
  std::map<std::string, AttrKind> kind_overrides;
};

/// RFC-4180-style CSV reader: header row required, quoted fields with ""
/// escapes, LF or CRLF line endings. Nominal value lists are built in
/// first-occurrence order. Rows with a missing class label are an error.
Dataset load_csv(std::istream& in, const CsvConfig& config = {});
Dataset load_csv_file(const std::string& path, const CsvConfig& config = {});

/// Writes a dataset back out as CSV. Numerics print with full round-trip
/// precision; missing cells use the given token.
void write_csv(const Dataset& d, std::ostream& out,
               const std::string& missing_token = "?");

struct FoldSplit {
  std::vector<int> train;
  std::vector<int> test;
};

/// Stratified fold assignment: shuffles each class's members with the seed,
/// then deals them round-robin to folds (the fold cursor carries over from
/// class to class so overall fold sizes stay balanced too). Test sets
/// partition the index set; per class, fold counts differ by at most one.
std::vector<FoldSplit> stratified_folds(const Dataset& d, int folds,
                                        std::uint64_t seed);

}  // namespace lwnb

#include "lwnb/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "lwnb/rng.hpp"

namespace lwnb {

DatasetSchema::DatasetSchema(std::vector<AttributeSpec> attributes,
                             int class_index)
    : attributes_(std::move(attributes)), class_index_(class_index) {
  if (attributes_.empty())
    throw InvalidArgument("schema has no attributes");
  if (class_index_ < 0 || class_index_ >= attribute_count())
    throw InvalidArgument("class index out of range");
  if (!class_attribute().is_nominal())
    throw InvalidArgument("class attribute must be nominal");

  std::set<std::string> names;
  for (const auto& a : attributes_) {
    if (!names.insert(a.name).second)
      throw InvalidArgument("duplicate attribute name: " + a.name);
    if (a.is_nominal()) {
      if (a.values.empty())
        throw InvalidArgument("nominal attribute has no values: " + a.name);
      std::set<std::string> vals(a.values.begin(), a.values.end());
      if (vals.size() != a.values.size())
        throw InvalidArgument("duplicate nominal value in attribute: " + a.name);
    }
  }
  for (int j = 0; j < attribute_count(); ++j)
    if (j != class_index_) predictive_.push_back(j);
}

Dataset::Dataset(DatasetSchema schema, std::vector<Instance> instances)
    : schema_(std::move(schema)), instances_(std::move(instances)) {
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const Instance& inst = instances_[i];
    if (static_cast<int>(inst.values.size()) != schema_.attribute_count())
      throw InvalidArgument("instance " + std::to_string(i) +
                            " has wrong attribute count");
    for (int j = 0; j < schema_.attribute_count(); ++j) {
      const Cell& c = inst.values[j];
      if (c.is_missing()) continue;
      const AttributeSpec& a = schema_.attribute(j);
      if (a.is_numeric() && !c.is_numeric())
        throw InvalidArgument("instance " + std::to_string(i) +
                              ": non-numeric cell in numeric attribute " + a.name);
      if (a.is_nominal()) {
        if (!c.is_nominal())
          throw InvalidArgument("instance " + std::to_string(i) +
                                ": non-nominal cell in nominal attribute " + a.name);
        if (c.as_nominal() < 0 || c.as_nominal() >= a.cardinality())
          throw InvalidArgument("instance " + std::to_string(i) +
                                ": nominal index out of range in " + a.name);
      }
    }
  }
}

namespace {

// Splits one RFC-4180 record starting at `pos` in `text`. Returns the fields
// and advances pos past the record's line terminator.
std::vector<std::string> parse_record(const std::string& text, std::size_t& pos) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  while (pos < text.size()) {
    char ch = text[pos];
    if (quoted) {
      if (ch == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field.push_back('"');
          pos += 2;
        } else {
          quoted = false;
          ++pos;
        }
      } else {
        field.push_back(ch);
        ++pos;
      }
    } else if (ch == '"') {
      quoted = true;
      ++pos;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      ++pos;
    } else if (ch == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
      pos += 2;
      fields.push_back(std::move(field));
      return fields;
    } else if (ch == '\n') {
      ++pos;
      fields.push_back(std::move(field));
      return fields;
    } else {
      field.push_back(ch);
      ++pos;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(begin, &end);
  if (end != begin + s.size() || errno == ERANGE || !std::isfinite(v))
    return false;
  out = v;
  return true;
}

}  // namespace

Dataset load_csv(std::istream& in, const CsvConfig& config) {
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  if (text.empty())
    throw CsvError(CsvError::Kind::empty_file, "empty CSV input");

  std::vector<std::string> header = parse_record(text, pos);
  const int ncols = static_cast<int>(header.size());
  if (ncols == 0 || (ncols == 1 && header[0].empty()))
    throw CsvError(CsvError::Kind::bad_header, "empty header row");
  {
    std::set<std::string> names(header.begin(), header.end());
    if (static_cast<int>(names.size()) != ncols)
      throw CsvError(CsvError::Kind::bad_header, "duplicate column names in header");
  }

  int class_col = ncols - 1;
  if (!config.class_column.empty()) {
    auto it = std::find(header.begin(), header.end(), config.class_column);
    if (it == header.end())
      throw CsvError(CsvError::Kind::bad_config,
                     "class column not found: " + config.class_column);
    class_col = static_cast<int>(it - header.begin());
  }
  for (const auto& [name, kind] : config.kind_overrides) {
    if (std::find(header.begin(), header.end(), name) == header.end())
      throw CsvError(CsvError::Kind::bad_config,
                     "kind override for unknown column: " + name);
    if (name == header[class_col] && kind == AttrKind::numeric)
      throw CsvError(CsvError::Kind::bad_config,
                     "class column cannot be numeric: " + name);
  }

  // Buffer all rows first; column kinds depend on the whole file.
  std::vector<std::vector<std::string>> rows;
  long row_no = 0;
  while (pos < text.size()) {
    std::vector<std::string> fields = parse_record(text, pos);
    ++row_no;
    if (fields.size() == 1 && fields[0].empty() && pos >= text.size())
      break;  // trailing newline
    if (static_cast<int>(fields.size()) != ncols)
      throw CsvError(CsvError::Kind::bad_arity,
                     "row " + std::to_string(row_no) + " has " +
                         std::to_string(fields.size()) + " fields, expected " +
                         std::to_string(ncols),
                     row_no);
    rows.push_back(std::move(fields));
  }
  if (rows.empty())
    throw CsvError(CsvError::Kind::empty_file, "CSV has a header but no data rows");

  // Decide column kinds: override wins; the class column is always nominal;
  // otherwise numeric iff every non-missing cell parses as a finite real.
  std::vector<AttrKind> kinds(ncols, AttrKind::numeric);
  for (int c = 0; c < ncols; ++c) {
    auto it = config.kind_overrides.find(header[c]);
    if (c == class_col) {
      kinds[c] = AttrKind::nominal;
      continue;
    }
    if (it != config.kind_overrides.end()) {
      kinds[c] = it->second;
      continue;
    }
    bool numeric = true;
    for (const auto& r : rows) {
      if (r[c] == config.missing_token) continue;
      double v;
      if (!parse_double(r[c], v)) {
        numeric = false;
        break;
      }
    }
    kinds[c] = numeric ? AttrKind::numeric : AttrKind::nominal;
  }

  std::vector<AttributeSpec> attrs(ncols);
  std::vector<std::unordered_map<std::string, int>> value_index(ncols);
  for (int c = 0; c < ncols; ++c) {
    attrs[c].name = header[c];
    attrs[c].kind = kinds[c];
  }

  std::vector<Instance> instances;
  instances.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const long rn = static_cast<long>(i) + 1;
    Instance inst;
    inst.values.resize(ncols);
    for (int c = 0; c < ncols; ++c) {
      const std::string& cell = rows[i][c];
      if (cell == config.missing_token) {
        if (c == class_col)
          throw CsvError(CsvError::Kind::missing_class_label,
                         "row " + std::to_string(rn) + " has a missing class label",
                         rn, c + 1);
        inst.values[c] = Cell::missing();
        continue;
      }
      if (kinds[c] == AttrKind::numeric) {
        double v;
        if (!parse_double(cell, v))
          throw CsvError(CsvError::Kind::bad_number,
                         "row " + std::to_string(rn) + ", column '" + header[c] +
                             "': cannot parse numeric value '" + cell + "'",
                         rn, c + 1);
        inst.values[c] = Cell::numeric(v);
      } else {
        auto [it, inserted] =
            value_index[c].try_emplace(cell, attrs[c].cardinality());
        if (inserted) attrs[c].values.push_back(cell);
        inst.values[c] = Cell::nominal(it->second);
      }
    }
    instances.push_back(std::move(inst));
  }

  return Dataset(DatasetSchema(std::move(attrs), class_col), std::move(instances));
}

Dataset load_csv_file(const std::string& path, const CsvConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open CSV file: " + path);
  return load_csv(in, config);
}

namespace {

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\r\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& s) {
  if (!needs_quoting(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char ch : s) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(const Dataset& d, std::ostream& out,
               const std::string& missing_token) {
  const DatasetSchema& schema = d.schema();
  for (int j = 0; j < schema.attribute_count(); ++j) {
    if (j) out << ',';
    write_field(out, schema.attribute(j).name);
  }
  out << '\n';
  for (int i = 0; i < d.size(); ++i) {
    const Instance& inst = d.instance(i);
    for (int j = 0; j < schema.attribute_count(); ++j) {
      if (j) out << ',';
      const Cell& c = inst.cell(j);
      if (c.is_missing())
        write_field(out, missing_token);
      else if (c.is_numeric())
        out << format_double(c.as_numeric());
      else
        write_field(out, schema.attribute(j).values[c.as_nominal()]);
    }
    out << '\n';
  }
}

std::vector<FoldSplit> stratified_folds(const Dataset& d, int folds,
                                        std::uint64_t seed) {
  if (folds < 2) throw InvalidArgument("fold count must be at least 2");
  if (folds > d.size())
    throw InvalidArgument("fold count " + std::to_string(folds) +
                          " exceeds instance count " + std::to_string(d.size()));

  const int o = d.schema().class_count();
  std::vector<std::vector<int>> by_class(o);
  for (int i = 0; i < d.size(); ++i) by_class[d.class_of(i)].push_back(i);

  std::mt19937_64 rng = make_rng(seed);
  std::vector<std::vector<int>> test_sets(folds);
  int cursor = 0;
  for (int c = 0; c < o; ++c) {
    std::shuffle(by_class[c].begin(), by_class[c].end(), rng);
    for (int i : by_class[c]) {
      test_sets[cursor].push_back(i);
      cursor = (cursor + 1) % folds;
    }
  }

  std::vector<FoldSplit> splits(folds);
  for (int f = 0; f < folds; ++f) {
    std::sort(test_sets[f].begin(), test_sets[f].end());
    splits[f].test = std::move(test_sets[f]);
  }
  // Train set of fold f = everything not in its test set.
  for (int f = 0; f < folds; ++f) {
    splits[f].train.reserve(d.size() - splits[f].test.size());
    std::size_t p = 0;
    for (int i = 0; i < d.size(); ++i) {
      if (p < splits[f].test.size() && splits[f].test[p] == i) {
        ++p;
        continue;
      }
      splits[f].train.push_back(i);
    }
  }
  return splits;
}

}  // namespace lwnb

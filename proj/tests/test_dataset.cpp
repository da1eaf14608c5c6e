#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>
#include <sstream>

#include "lwnb/dataset.hpp"

using namespace lwnb;

namespace {

Dataset parse(const std::string& text, const CsvConfig& config = {}) {
  std::istringstream in(text);
  return load_csv(in, config);
}

}  // namespace

TEST_CASE("csv basic readback") {
  const Dataset d = parse("x,cls\n1.0,a\n2.0,b\n3.0,a\n");
  REQUIRE(d.size() == 3);
  REQUIRE(d.schema().attribute_count() == 2);
  CHECK(d.schema().attribute(0).is_numeric());
  CHECK(d.schema().class_index() == 1);  // last column by default
  CHECK(d.schema().class_count() == 2);
  CHECK(d.instance(0).cell(0).as_numeric() == 1.0);
  // first-occurrence order: a=0, b=1
  CHECK(d.class_of(0) == 0);
  CHECK(d.class_of(1) == 1);
  CHECK(d.class_of(2) == 0);
}

TEST_CASE("csv missing token") {
  const Dataset d = parse("x,cls\n1.0,a\n?,b\n3.0,a\n");
  CHECK(d.schema().attribute(0).is_numeric());  // ? does not block detection
  CHECK(d.instance(1).cell(0).is_missing());
  CHECK_FALSE(d.instance(0).cell(0).is_missing());
}

TEST_CASE("csv kind detection and overrides") {
  // mixed column -> nominal
  const Dataset d = parse("x,y,cls\n1,red,a\n2,7,b\n");
  CHECK(d.schema().attribute(0).is_numeric());
  CHECK(d.schema().attribute(1).is_nominal());
  CHECK(d.schema().attribute(1).values == std::vector<std::string>{"red", "7"});

  // numeric-looking column forced nominal
  CsvConfig cfg;
  cfg.kind_overrides["x"] = AttrKind::nominal;
  const Dataset d2 = parse("x,cls\n1,a\n2,b\n1,a\n", cfg);
  CHECK(d2.schema().attribute(0).is_nominal());
  CHECK(d2.schema().attribute(0).cardinality() == 2);
}

TEST_CASE("csv quoting") {
  const Dataset d = parse(
      "name,cls\n\"a,b\",x\n\"say \"\"hi\"\"\",y\n");
  CHECK(d.schema().attribute(0).values ==
        std::vector<std::string>{"a,b", "say \"hi\""});
}

TEST_CASE("csv crlf line endings") {
  const Dataset d = parse("x,cls\r\n1.0,a\r\n2.0,b\r\n");
  CHECK(d.size() == 2);
  CHECK(d.instance(1).cell(0).as_numeric() == 2.0);
}

TEST_CASE("csv class column selection") {
  CsvConfig cfg;
  cfg.class_column = "cls";
  const Dataset d = parse("cls,x\na,1.0\nb,2.0\n", cfg);
  CHECK(d.schema().class_index() == 0);
  CHECK(d.schema().predictive_indices() == std::vector<int>{1});
}

TEST_CASE("csv errors carry kind and position") {
  CHECK_THROWS_AS(parse(""), CsvError);
  try {
    parse("");
    FAIL("expected error");
  } catch (const CsvError& e) {
    CHECK(e.kind == CsvError::Kind::empty_file);
  }

  try {
    parse("x,cls\n1.0,a\n2.0\n");  // row 2 has 1 field
    FAIL("expected error");
  } catch (const CsvError& e) {
    CHECK(e.kind == CsvError::Kind::bad_arity);
    CHECK(e.row == 2);
  }

  try {
    parse("x,cls\n1.0,a\n2.0,?\n");  // missing class label
    FAIL("expected error");
  } catch (const CsvError& e) {
    CHECK(e.kind == CsvError::Kind::missing_class_label);
    CHECK(e.row == 2);
  }

  try {
    CsvConfig cfg;
    cfg.kind_overrides["x"] = AttrKind::numeric;
    parse("x,cls\nred,a\n", cfg);  // forced numeric, unparseable
    FAIL("expected error");
  } catch (const CsvError& e) {
    CHECK(e.kind == CsvError::Kind::bad_number);
    CHECK(e.row == 1);
    CHECK(e.column == 1);
  }

  try {
    parse("x,x\n1,a\n");  // duplicate header
    FAIL("expected error");
  } catch (const CsvError& e) {
    CHECK(e.kind == CsvError::Kind::bad_header);
  }

  try {
    CsvConfig cfg;
    cfg.class_column = "nope";
    parse("x,cls\n1,a\n", cfg);
    FAIL("expected error");
  } catch (const CsvError& e) {
    CHECK(e.kind == CsvError::Kind::bad_config);
  }

  try {
    CsvConfig cfg;
    cfg.kind_overrides["cls"] = AttrKind::numeric;
    parse("x,cls\n1,2\n", cfg);  // class must stay nominal
    FAIL("expected error");
  } catch (const CsvError& e) {
    CHECK(e.kind == CsvError::Kind::bad_config);
  }
}

TEST_CASE("csv write/load round trip") {
  const Dataset d =
      parse("x,label,cls\n1.25,red,a\n?,\"with,comma\",b\n-3e-7,red,a\n");
  std::ostringstream out;
  write_csv(d, out);
  const Dataset d2 = parse(out.str());
  REQUIRE(d2.size() == d.size());
  REQUIRE(d2.schema().attribute_count() == d.schema().attribute_count());
  for (int j = 0; j < d.schema().attribute_count(); ++j) {
    CHECK(d2.schema().attribute(j).name == d.schema().attribute(j).name);
    CHECK(d2.schema().attribute(j).kind == d.schema().attribute(j).kind);
    CHECK(d2.schema().attribute(j).values == d.schema().attribute(j).values);
  }
  for (int i = 0; i < d.size(); ++i)
    for (int j = 0; j < d.schema().attribute_count(); ++j)
      CHECK(d2.instance(i).cell(j) == d.instance(i).cell(j));
}

TEST_CASE("schema validation") {
  // class attribute must be nominal
  CHECK_THROWS_AS(
      DatasetSchema({{"x", AttrKind::numeric, {}}}, 0), InvalidArgument);
  // duplicate names
  CHECK_THROWS_AS(DatasetSchema({{"x", AttrKind::numeric, {}},
                                 {"x", AttrKind::nominal, {"a"}}},
                                1),
                  InvalidArgument);
  // empty nominal value list
  CHECK_THROWS_AS(DatasetSchema({{"c", AttrKind::nominal, {}}}, 0),
                  InvalidArgument);
  // duplicate nominal values
  CHECK_THROWS_AS(DatasetSchema({{"c", AttrKind::nominal, {"a", "a"}}}, 0),
                  InvalidArgument);
}

TEST_CASE("dataset validation") {
  DatasetSchema schema({{"x", AttrKind::numeric, {}},
                        {"cls", AttrKind::nominal, {"a", "b"}}},
                       1);
  // nominal index beyond cardinality
  Instance bad{{Cell::numeric(1.0), Cell::nominal(2)}};
  CHECK_THROWS_AS(Dataset(schema, {bad}), InvalidArgument);
  // kind mismatch
  Instance wrong{{Cell::nominal(0), Cell::nominal(0)}};
  CHECK_THROWS_AS(Dataset(schema, {wrong}), InvalidArgument);
  // wrong arity
  Instance narrow{{Cell::numeric(1.0)}};
  CHECK_THROWS_AS(Dataset(schema, {narrow}), InvalidArgument);
}

namespace {

Dataset two_class_dataset(int per_class) {
  std::string text = "x,cls\n";
  for (int i = 0; i < per_class; ++i)
    text += std::to_string(i) + ",a\n" + std::to_string(100 + i) + ",b\n";
  return parse(text);
}

}  // namespace

TEST_CASE("stratified folds partition and balance") {
  const Dataset d = two_class_dataset(5);  // 10 instances, 5 per class
  const auto splits = stratified_folds(d, 5, 7);
  REQUIRE(splits.size() == 5);

  std::set<int> seen;
  for (const FoldSplit& s : splits) {
    CHECK(s.test.size() == 2);  // exactly one instance of each class
    int per_class[2] = {0, 0};
    const std::set<int> test_set(s.test.begin(), s.test.end());
    for (int i : s.test) {
      per_class[d.class_of(i)]++;
      CHECK(seen.insert(i).second);  // test sets are pairwise disjoint
    }
    CHECK(per_class[0] == 1);
    CHECK(per_class[1] == 1);
    CHECK(s.train.size() + s.test.size() == 10);
    for (int i : s.train) CHECK(test_set.count(i) == 0);  // complement
  }
  CHECK(seen.size() == 10);  // union covers everything
}

TEST_CASE("stratified folds per-class counts differ by at most one") {
  // 7 of class a, 11 of class b, 3 folds: uneven on purpose
  std::string text = "x,cls\n";
  for (int i = 0; i < 7; ++i) text += std::to_string(i) + ",a\n";
  for (int i = 0; i < 11; ++i) text += std::to_string(50 + i) + ",b\n";
  const Dataset d = parse(text);

  const auto splits = stratified_folds(d, 3, 123);
  for (int c = 0; c < 2; ++c) {
    std::vector<int> counts;
    for (const FoldSplit& s : splits) {
      int n = 0;
      for (int i : s.test) n += d.class_of(i) == c;
      counts.push_back(n);
    }
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    CHECK(*hi - *lo <= 1);
  }
}

TEST_CASE("stratified folds determinism") {
  const Dataset d = two_class_dataset(20);
  const auto a = stratified_folds(d, 10, 99);
  const auto b = stratified_folds(d, 10, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t f = 0; f < a.size(); ++f) {
    CHECK(a[f].test == b[f].test);
    CHECK(a[f].train == b[f].train);
  }
  // another seed almost surely deals differently
  const auto c = stratified_folds(d, 10, 100);
  bool any_diff = false;
  for (std::size_t f = 0; f < a.size(); ++f)
    if (a[f].test != c[f].test) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("stratified folds argument errors") {
  const Dataset d = two_class_dataset(1);  // n=2
  CHECK_THROWS_AS(stratified_folds(d, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(stratified_folds(d, 3, 0), InvalidArgument);  // folds > n
}

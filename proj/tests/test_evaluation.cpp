#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lwnb/errors.hpp"
#include "lwnb/evaluation.hpp"
#include "lwnb/rng.hpp"

using namespace lwnb;

namespace {

Instance row(std::vector<Cell> cells) { return Instance{std::move(cells)}; }

/// n instances, exactly half per class, as two jittered clusters.
Dataset balanced_dataset(int n, std::uint64_t seed) {
  DatasetSchema schema({{"x", AttrKind::numeric, {}},
                        {"y", AttrKind::numeric, {}},
                        {"label", AttrKind::nominal, {"a", "b"}}},
                       2);
  std::mt19937_64 rng = make_rng(seed);
  auto coin = [&] { return (rng() >> 11) * 0x1.0p-53; };
  std::vector<Instance> rows;
  for (int i = 0; i < n; ++i) {
    const int cls = i % 2;
    rows.push_back(row({Cell::numeric((cls ? 0.7 : 0.3) + (coin() - 0.5) * 0.4),
                        Cell::numeric(coin()), Cell::nominal(cls)}));
  }
  return Dataset(schema, std::move(rows));
}

/// Ten copies each of two distinct labeled points.
Dataset duplicated_pair_dataset() {
  DatasetSchema schema({{"x", AttrKind::numeric, {}},
                        {"y", AttrKind::numeric, {}},
                        {"label", AttrKind::nominal, {"a", "b"}}},
                       2);
  std::vector<Instance> rows;
  for (int i = 0; i < 10; ++i) {
    rows.push_back(row({Cell::numeric(0.0), Cell::numeric(0.0), Cell::nominal(0)}));
    rows.push_back(row({Cell::numeric(1.0), Cell::numeric(1.0), Cell::nominal(1)}));
  }
  return Dataset(schema, std::move(rows));
}

struct EnvGuard {
  std::string name;
  std::string old;
  bool had = false;

  EnvGuard(const char* n, const char* value) : name(n) {
    if (const char* prev = std::getenv(n)) {
      had = true;
      old = prev;
    }
    if (value)
      ::setenv(n, value, 1);
    else
      ::unsetenv(n);
  }
  ~EnvGuard() {
    if (had)
      ::setenv(name.c_str(), old.c_str(), 1);
    else
      ::unsetenv(name.c_str());
  }
};

}  // namespace

TEST_CASE("mean and sample stdev") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(xs) == 2.5);
  CHECK(sample_stdev(xs) == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-15));
  CHECK(mean(std::vector<double>{}) == 0.0);
  CHECK(sample_stdev(std::vector<double>{7.0}) == 0.0);
}

TEST_CASE("run partitions are valid, deterministic, and distinct per run") {
  const Dataset d = balanced_dataset(20, 61);
  const auto parts = make_run_partitions(d, 3, 4, 99);
  REQUIRE(parts.size() == 3);
  for (const auto& folds : parts) {
    REQUIRE(folds.size() == 4);
    std::set<int> seen;
    for (const FoldSplit& split : folds) {
      CHECK_FALSE(split.test.empty());
      CHECK(split.train.size() + split.test.size() ==
            static_cast<std::size_t>(d.size()));
      for (int i : split.test) {
        CHECK(seen.count(i) == 0);
        seen.insert(i);
      }
    }
    CHECK(seen.size() == static_cast<std::size_t>(d.size()));
  }

  const auto again = make_run_partitions(d, 3, 4, 99);
  CHECK(parts[0][0].test == again[0][0].test);
  CHECK(parts[2][3].train == again[2][3].train);
  CHECK(parts[0][0].test != parts[1][0].test);  // runs reshuffle

  CHECK_THROWS_AS((void)make_run_partitions(d, 0, 4, 99), InvalidArgument);
}

TEST_CASE("constant-vote classifier scores exactly the class balance") {
  // knn with k = train size sees all 8+8 training votes tie on every
  // query and always answers the first class; on balanced test folds
  // that is exactly half right.
  const Dataset d = balanced_dataset(20, 62);
  const ClassifierConfig config{ClassifierKind::knn, 16};
  const std::vector<double> accs = cross_validate(d, config, 2, 5, 17);
  REQUIRE(accs.size() == 10);
  for (double a : accs) CHECK(a == 0.5);
}

TEST_CASE("memorizable data gives a perfect nearest-neighbor score") {
  const Dataset d = duplicated_pair_dataset();
  const ClassifierConfig config{ClassifierKind::knn, 1};
  const std::vector<double> accs = cross_validate(d, config, 3, 2, 23);
  REQUIRE(accs.size() == 6);
  for (double a : accs) CHECK(a == 1.0);
}

TEST_CASE("accuracy list covers runs x folds in deterministic order") {
  const Dataset d = balanced_dataset(20, 63);
  const ClassifierConfig config{ClassifierKind::nb};
  const auto parts = make_run_partitions(d, 10, 10, 5);
  const std::vector<double> accs = cross_validate_partitions(d, config, parts);
  CHECK(accs.size() == 100);

  // same partitions, same list -- and thread count must not change it
  {
    EnvGuard one("LWNB_THREADS", "1");
    CHECK(cross_validate_partitions(d, config, parts) == accs);
  }
  {
    EnvGuard five("LWNB_THREADS", "5");
    CHECK(cross_validate_partitions(d, config, parts) == accs);
  }
  CHECK(cross_validate(d, config, 10, 10, 5) == accs);
}

TEST_CASE("cross-validation input guards") {
  const Dataset d = balanced_dataset(8, 64);
  const ClassifierConfig config{ClassifierKind::nb};
  CHECK_THROWS_AS(
      (void)cross_validate_partitions(d, config, {}), InvalidArgument);

  std::vector<std::vector<FoldSplit>> bad{{FoldSplit{{0, 1, 2}, {}}}};
  CHECK_THROWS_AS((void)cross_validate_partitions(d, config, bad),
                  InvalidArgument);
}

TEST_CASE("t-test on identical accuracy lists") {
  const std::vector<double> a{0.5, 0.6, 0.7, 0.8};
  const TTestResult res = corrected_resampled_ttest(a, a, 0.9);
  CHECK(res.t == 0.0);
  CHECK(res.verdict == Verdict::no_difference);
  CHECK(res.degenerate);
}

TEST_CASE("t-test with constant nonzero differences is decided by sign") {
  std::vector<double> a, b;
  for (int i = 0; i < 10; ++i) {
    b.push_back(0.5);
    a.push_back(0.5 + 0.01);
  }
  const TTestResult res = corrected_resampled_ttest(a, b, 0.9);
  CHECK(res.degenerate);
  CHECK(res.verdict == Verdict::a_better);
  CHECK(std::isinf(res.t));
  CHECK(res.t > 0);

  const TTestResult rev = corrected_resampled_ttest(b, a, 0.9);
  CHECK(rev.verdict == Verdict::b_better);
  CHECK(rev.t < 0);
}

TEST_CASE("classical paired t-test at train_fraction 1") {
  const std::vector<double> diffs{0.02, -0.01, 0.03, 0.00, 0.01};
  const std::vector<double> zeros(5, 0.0);
  const TTestResult res = corrected_resampled_ttest(diffs, zeros, 1.0);
  // mean 0.01, sample variance 0.00025: t = 0.01 / sqrt(0.00005) = sqrt(2)
  CHECK(res.t == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(res.verdict == Verdict::no_difference);  // crit(df=4) ~= 2.776
  CHECK_FALSE(res.degenerate);
}

TEST_CASE("t statistic against the direct formula, several sizes") {
  std::mt19937_64 rng = make_rng(71);
  // two-sided 5% critical values of Student's t
  const double crit_by_df[] = {2.2621571628540993,   // df 9
                               2.0422724563012373,   // df 30
                               1.9842169515086827};  // df 99
  const int sizes[] = {10, 31, 100};

  for (int s = 0; s < 3; ++s) {
    const int j = sizes[s];
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> a, b;
      for (int i = 0; i < j; ++i) {
        // accuracies on a 1/64 grid keep later shift tests exact
        a.push_back(static_cast<double>(rng() % 64) / 64.0);
        b.push_back(static_cast<double>(rng() % 64) / 64.0);
      }
      const double tf = 0.9;
      const TTestResult res = corrected_resampled_ttest(a, b, tf);

      double md = 0.0;
      for (int i = 0; i < j; ++i) md += a[i] - b[i];
      md /= j;
      double ss = 0.0;
      for (int i = 0; i < j; ++i) {
        const double dv = a[i] - b[i] - md;
        ss += dv * dv;
      }
      const double var = ss / (j - 1);
      if (var == 0.0) continue;  // vanishing odds, but stay well-defined
      const double want = md / std::sqrt((1.0 / j + (1.0 - tf) / tf) * var);
      CHECK(res.t == doctest::Approx(want).epsilon(1e-10));

      const double crit = crit_by_df[s];
      const Verdict expect = res.t > crit    ? Verdict::a_better
                             : res.t < -crit ? Verdict::b_better
                                             : Verdict::no_difference;
      CHECK(res.verdict == expect);

      // swapping the lists negates the statistic exactly
      const TTestResult rev = corrected_resampled_ttest(b, a, tf);
      CHECK(rev.t == -res.t);

      // a common shift on both lists changes nothing (0.125 is exact here)
      std::vector<double> a2, b2;
      for (int i = 0; i < j; ++i) {
        a2.push_back(a[i] + 0.125);
        b2.push_back(b[i] + 0.125);
      }
      CHECK(corrected_resampled_ttest(a2, b2, tf).t == res.t);
    }
  }
}

TEST_CASE("t-test argument validation") {
  const std::vector<double> a{0.5, 0.6}, b{0.5};
  CHECK_THROWS_AS((void)corrected_resampled_ttest(a, b, 0.9), InvalidArgument);
  const std::vector<double> one{0.5};
  CHECK_THROWS_AS((void)corrected_resampled_ttest(one, one, 0.9),
                  InvalidArgument);
  const std::vector<double> ok{0.5, 0.6};
  CHECK_THROWS_AS((void)corrected_resampled_ttest(ok, ok, 0.0), InvalidArgument);
  CHECK_THROWS_AS((void)corrected_resampled_ttest(ok, ok, 1.2), InvalidArgument);
  CHECK_THROWS_AS((void)corrected_resampled_ttest(ok, ok, -0.5),
                  InvalidArgument);
  CHECK_THROWS_AS((void)corrected_resampled_ttest(ok, ok, 0.9, 0.0),
                  InvalidArgument);
  CHECK_THROWS_AS((void)corrected_resampled_ttest(ok, ok, 0.9, 1.0),
                  InvalidArgument);
}

TEST_CASE("TSV report formatting") {
  EvalReport report;

  EvalRow base;
  base.dataset = "checkers";
  base.config = ClassifierConfig{ClassifierKind::nb};
  base.mean_acc = 0.5012;
  base.stdev = 0.0456;
  report.rows.push_back(base);

  EvalRow lw;
  lw.dataset = "checkers";
  lw.config = ClassifierConfig{ClassifierKind::lwnb, 50};
  lw.mean_acc = 0.9;
  lw.stdev = 0.025;
  lw.vs_baseline = TTestResult{
      std::numeric_limits<double>::infinity(), Verdict::a_better, true};
  report.rows.push_back(lw);

  EvalRow kd;
  kd.dataset = "checkers";
  kd.config = ClassifierConfig{ClassifierKind::knn_dw, 7};
  kd.config.numeric_mode = NumericMode::discretize;
  kd.mean_acc = 1.0 / 3.0;
  kd.stdev = 0.0;
  kd.vs_baseline = TTestResult{0.5, Verdict::no_difference, false};
  report.rows.push_back(kd);

  std::ostringstream out;
  write_report_tsv(report, out);
  CHECK(out.str() ==
        "dataset\tclassifier\tk\tmean_acc\tstdev\tverdict_vs_baseline\n"
        "checkers\tnb\t-\t50.12\t4.56\tbaseline\n"
        "checkers\tlwnb\t50\t90.00\t2.50\twin*\n"
        "checkers\tknn_dw/disc\t7\t33.33\t0.00\tdraw\n");
}

TEST_CASE("parallel_for_strided") {
  SUBCASE("every index runs exactly once, on its strided worker") {
    const int n = 23, width = 4;
    std::vector<int> hits(n, 0), worker_of(n, -1);
    parallel_for_strided(n, width, [&](int worker, int i) {
      ++hits[i];
      worker_of[i] = worker;
    });
    for (int i = 0; i < n; ++i) {
      CHECK(hits[i] == 1);
      CHECK(worker_of[i] == i % width);
    }
  }

  SUBCASE("width is clamped to the task count") {
    std::vector<int> worker_of(3, -1);
    parallel_for_strided(3, 100, [&](int worker, int i) {
      worker_of[i] = worker;
    });
    for (int i = 0; i < 3; ++i) CHECK(worker_of[i] == i);
  }

  SUBCASE("sequential when width is 1, in order") {
    std::vector<int> order;
    parallel_for_strided(5, 1, [&](int worker, int i) {
      CHECK(worker == 0);
      order.push_back(i);
    });
    CHECK(order == std::vector<int>{0, 1, 2, 3, 4});
  }

  SUBCASE("n of zero is a no-op") {
    parallel_for_strided(0, 4, [&](int, int) { CHECK(false); });
  }

  SUBCASE("exceptions propagate to the caller") {
    std::atomic<int> calls{0};
    auto boom = [&](int, int i) {
      ++calls;
      if (i == 5) throw InvalidArgument("boom");
    };
    CHECK_THROWS_AS(parallel_for_strided(8, 3, boom), InvalidArgument);
    CHECK(calls.load() >= 1);
  }
}

TEST_CASE("thread width honors the environment override") {
  {
    EnvGuard three("LWNB_THREADS", "3");
    CHECK(thread_width() == 3);
  }
  {
    EnvGuard zero("LWNB_THREADS", "0");  // invalid: fall back to hardware
    CHECK(thread_width() >= 1);
  }
  {
    EnvGuard unset("LWNB_THREADS", nullptr);
    CHECK(thread_width() >= 1);
  }
}

#include "lwnb/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "lwnb/errors.hpp"
#include "lwnb/rng.hpp"

namespace lwnb {

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_stdev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::vector<std::vector<FoldSplit>> make_run_partitions(const Dataset& d,
                                                        int runs, int folds,
                                                        std::uint64_t seed) {
  if (runs < 1) throw InvalidArgument("run count must be at least 1");
  std::vector<std::vector<FoldSplit>> partitions;
  partitions.reserve(runs);
  for (int r = 0; r < runs; ++r)
    partitions.push_back(stratified_folds(d, folds, mix_seed(seed, r)));
  return partitions;
}

std::vector<double> cross_validate_partitions(
    const Dataset& d, const ClassifierConfig& config,
    const std::vector<std::vector<FoldSplit>>& partitions) {
  const int runs = static_cast<int>(partitions.size());
  if (runs == 0) throw InvalidArgument("cross_validate: no partitions");
  const int folds = static_cast<int>(partitions[0].size());
  const int tasks = runs * folds;
  std::vector<double> accuracies(tasks, 0.0);

  const int width = std::min(thread_width(), tasks);
  // One classifier per worker: fitting mutates it, and reusing the instance
  // across that worker's folds keeps the k-clamp warning to a single line.
  std::vector<std::unique_ptr<Classifier>> workers;
  for (int w = 0; w < std::max(width, 1); ++w)
    workers.push_back(make_classifier(config));

  parallel_for_strided(tasks, width, [&](int worker, int task) {
    const FoldSplit& split = partitions[task / folds][task % folds];
    if (split.test.empty())
      throw InvalidArgument("cross_validate: empty test fold");
    Classifier& clf = *workers[worker];
    clf.fit(d, split.train);
    int correct = 0;
    for (int i : split.test)
      if (clf.predict(d.instance(i)) == d.class_of(i)) ++correct;
    accuracies[task] = static_cast<double>(correct) /
                       static_cast<double>(split.test.size());
  });
  return accuracies;
}

std::vector<double> cross_validate(const Dataset& d,
                                   const ClassifierConfig& config, int runs,
                                   int folds, std::uint64_t seed) {
  return cross_validate_partitions(d, config,
                                   make_run_partitions(d, runs, folds, seed));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::a_better: return "a_better";
    case Verdict::b_better: return "b_better";
    case Verdict::no_difference: return "no_difference";
  }
  return "?";
}

TTestResult corrected_resampled_ttest(std::span<const double> acc_a,
                                      std::span<const double> acc_b,
                                      double train_fraction, double alpha) {
  if (acc_a.size() != acc_b.size())
    throw InvalidArgument("t-test: accuracy lists differ in length");
  const int j = static_cast<int>(acc_a.size());
  if (j < 2) throw InvalidArgument("t-test: need at least 2 paired folds");
  if (!(train_fraction > 0.0) || train_fraction > 1.0)
    throw InvalidArgument("t-test: train_fraction must be in (0, 1]");
  if (!(alpha > 0.0) || alpha >= 1.0)
    throw InvalidArgument("t-test: alpha must be in (0, 1)");

  std::vector<double> diff(j);
  for (int i = 0; i < j; ++i) diff[i] = acc_a[i] - acc_b[i];
  const double md = mean(diff);
  double ss = 0.0;
  for (double dv : diff) ss += (dv - md) * (dv - md);
  const double var = ss / (j - 1);

  TTestResult res;
  if (var == 0.0) {
    // All fold differences identical: the statistic is undefined, so the
    // sign of the shared difference decides.
    res.degenerate = true;
    if (md == 0.0) {
      res.t = 0.0;
      res.verdict = Verdict::no_difference;
    } else {
      res.t = std::copysign(std::numeric_limits<double>::infinity(), md);
      res.verdict = md > 0.0 ? Verdict::a_better : Verdict::b_better;
    }
    return res;
  }

  const double rho = (1.0 - train_fraction) / train_fraction;
  res.t = md / std::sqrt((1.0 / j + rho) * var);
  const boost::math::students_t_distribution<double> dist(j - 1);
  const double crit = boost::math::quantile(dist, 1.0 - alpha / 2.0);
  if (res.t > crit)
    res.verdict = Verdict::a_better;
  else if (res.t < -crit)
    res.verdict = Verdict::b_better;
  else
    res.verdict = Verdict::no_difference;
  return res;
}

namespace {

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

std::string verdict_marker(const std::optional<TTestResult>& vs) {
  if (!vs) return "baseline";
  std::string m;
  switch (vs->verdict) {
    case Verdict::a_better: m = "win"; break;
    case Verdict::b_better: m = "loss"; break;
    case Verdict::no_difference: m = "draw"; break;
  }
  if (vs->degenerate) m += "*";
  return m;
}

}  // namespace

void write_report_tsv(const EvalReport& report, std::ostream& out) {
  out << "dataset\tclassifier\tk\tmean_acc\tstdev\tverdict_vs_baseline\n";
  for (const EvalRow& row : report.rows) {
    const bool uses_k = row.config.kind != ClassifierKind::nb;
    out << row.dataset << '\t' << to_string(row.config.kind);
    if (row.config.numeric_mode == NumericMode::discretize) out << "/disc";
    out << '\t' << (uses_k ? std::to_string(row.config.k) : std::string("-"))
        << '\t' << percent(row.mean_acc) << '\t' << percent(row.stdev) << '\t'
        << verdict_marker(row.vs_baseline) << '\n';
  }
}

int thread_width() {
  if (const char* env = std::getenv("LWNB_THREADS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for_strided(int n, int width,
                          const std::function<void(int, int)>& body) {
  if (n <= 0) return;
  width = std::clamp(width, 1, n);
  if (width == 1) {
    for (int i = 0; i < n; ++i) body(0, i);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  threads.reserve(width);
  for (int w = 0; w < width; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += width) body(w, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lwnb

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lwnb/classifiers.hpp"
#include "lwnb/dataset.hpp"

namespace lwnb {

double mean(std::span<const double> xs);
/// Sample standard deviation (n-1 denominator); 0 for fewer than 2 values.
double sample_stdev(std::span<const double> xs);

/// Stratified partitions for `runs` repetitions: partitions[run][fold].
/// Each run draws its folds from an independent seed stream so the same
/// partitions can be shared across every classifier under comparison.
std::vector<std::vector<FoldSplit>> make_run_partitions(const Dataset& d,
                                                        int runs, int folds,
                                                        std::uint64_t seed);

/// Fold accuracies for one classifier over the given partitions, in
/// deterministic (run, fold) order regardless of execution interleaving.
/// Preprocessing is refitted on each training fold.
std::vector<double> cross_validate_partitions(
    const Dataset& d, const ClassifierConfig& config,
    const std::vector<std::vector<FoldSplit>>& partitions);

std::vector<double> cross_validate(const Dataset& d,
                                   const ClassifierConfig& config, int runs,
                                   int folds, std::uint64_t seed);

enum class Verdict { a_better, b_better, no_difference };
std::string to_string(Verdict v);

struct TTestResult {
  double t = 0.0;
  Verdict verdict = Verdict::no_difference;
  /// True when the paired differences had zero variance and the verdict was
  /// forced by the sign of their mean alone.
  bool degenerate = false;
};

/// Paired t-test over fold-by-fold accuracy differences with the variance
/// inflated for train-set overlap:
///
///   t = mean(d) / sqrt((1/J + rho) * var(d)),  rho = (1 - f) / f
///
/// where f is the training fraction ((folds-1)/folds; 1/9 inflation for
/// 10-fold) and var(d) the sample variance. Two-sided at level alpha
/// against Student's t with J-1 degrees of freedom. train_fraction = 1
/// gives rho = 0, the classical paired t-test.
TTestResult corrected_resampled_ttest(std::span<const double> acc_a,
                                      std::span<const double> acc_b,
                                      double train_fraction,
                                      double alpha = 0.05);

struct EvalRow {
  std::string dataset;
  ClassifierConfig config;
  std::vector<double> accuracies;
  double mean_acc = 0.0;
  double stdev = 0.0;
  /// Comparison of this row against the report's baseline row; unset on the
  /// baseline itself (and on single-classifier reports).
  std::optional<TTestResult> vs_baseline;
};

struct EvalReport {
  std::vector<EvalRow> rows;
};

/// Tab-separated report: dataset, classifier, k, mean_acc, stdev,
/// verdict_vs_baseline. Accuracies are percentages; win/loss is from the
/// row's point of view, with a trailing * on degenerate comparisons.
void write_report_tsv(const EvalReport& report, std::ostream& out);

/// Runs body(worker, index) for index in [0, n): indices are dealt to
/// `width` workers round-robin, each running its share in order on its own
/// thread. Sequential when width <= 1. First exception is rethrown.
void parallel_for_strided(int n, int width,
                          const std::function<void(int, int)>& body);

/// Worker count: the LWNB_THREADS environment variable if set, else the
/// hardware concurrency, at least 1.
int thread_width();

}  // namespace lwnb

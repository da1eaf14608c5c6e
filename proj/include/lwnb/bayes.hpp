#pragma once

#include <span>
#include <string>
#include <vector>

#include "lwnb/dataset.hpp"

#include "json.hpp"

namespace lwnb {

/// Denominator of the nominal conditional estimate. `class_weight` is the
/// proper Laplace form n_j + (observed weight of the class), under which
/// each conditional row sums to one. `value_weight` instead uses
/// n_j + (observed weight of the value across all classes); rows then do
/// not normalize. It exists for comparison studies only.
enum class NominalDenominator { class_weight, value_weight };

struct FitOptions {
  NominalDenominator denominator = NominalDenominator::class_weight;
  double stdev_rel_floor = 1e-6;  // times the observed attribute range
  double stdev_abs_floor = 1e-9;
};

struct GaussianParam {
  double mean = 0.0;
  double stdev = 1.0;
  /// False when the attribute had no observed value at all in the fit data;
  /// the posterior then skips the attribute for every class.
  bool observed = false;
};

/// A fitted weighted naive Bayes model. All stored probabilities are
/// strictly positive; nominal conditional rows sum to one under the
/// class_weight denominator.
struct WeightedNBModel {
  DatasetSchema schema;
  std::vector<double> class_priors;  // length o
  /// [attribute][class][value]; empty for numeric attributes and the class.
  std::vector<std::vector<std::vector<double>>> nominal_tables;
  /// Per [attribute][class]: the denominator a value outside the schema's
  /// value list gets at prediction time, so its probability is the Laplace
  /// mass 1/denominator. Under class_weight this equals the denominator the
  /// table was built with; under value_weight an unknown value carries no
  /// weight, so it is just n_j.
  std::vector<std::vector<double>> nominal_denoms;
  /// [attribute][class]; empty for nominal attributes.
  std::vector<std::vector<GaussianParam>> gaussians;
  double total_weight = 0.0;
  NominalDenominator denominator = NominalDenominator::class_weight;
};

/// Fits priors, nominal conditionals and per-class Gaussians from the rows
/// selected by `indices`, weighted by `weights` (aligned with `indices`).
/// Instances missing an attribute are excluded from that attribute's
/// statistics only. A class or (class, attribute) with zero observed weight
/// falls back to the pooled all-class statistics for its Gaussian; its
/// nominal conditionals are the uniform Laplace mass.
WeightedNBModel fit_weighted_nb(const DatasetSchema& schema,
                                const std::vector<Instance>& rows,
                                std::span<const int> indices,
                                std::span<const double> weights,
                                const FitOptions& options = {});

/// Convenience over all rows in order.
WeightedNBModel fit_weighted_nb(const DatasetSchema& schema,
                                const std::vector<Instance>& rows,
                                std::span<const double> weights,
                                const FitOptions& options = {});

/// Class posterior, normalized to sum one. Computed in log space with a
/// max shift; missing attributes are skipped. Never returns zeros or NaN.
std::vector<double> posterior(const WeightedNBModel& model, const Instance& inst);

/// Argmax of the posterior; ties break toward the lowest class index.
int predict(const WeightedNBModel& model, const Instance& inst);

/// Versioned JSON document for inspection and round-tripping. Round-trip
/// preserves predictions exactly.
nlohmann::json model_to_json(const WeightedNBModel& model);
WeightedNBModel model_from_json(const nlohmann::json& doc);

}  // namespace lwnb

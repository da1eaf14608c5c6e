#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lwnb/bayes.hpp"
#include "lwnb/dataset.hpp"
#include "lwnb/neighbors.hpp"
#include "lwnb/preprocess.hpp"
#include "lwnb/weighting.hpp"

namespace lwnb {

enum class ClassifierKind { lwnb, nb, knn, knn_dw };

/// How numeric attributes enter the model: per-class Gaussians on the
/// normalized values, or entropy-based discretization into nominal bins
/// (distances are then measured on the one-hot encoding of the bins).
enum class NumericMode { gaussian, discretize };

std::string to_string(ClassifierKind kind);
std::string to_string(NumericMode mode);

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::lwnb;
  int k = 50;  // neighbor-based kinds only
  NumericMode numeric_mode = NumericMode::gaussian;
  NominalDenominator denominator = NominalDenominator::class_weight;
  /// Weighting function used by lwnb and knn_dw; null means the linear
  /// kernel. Injectable so tests can substitute e.g. a constant kernel.
  KernelFn kernel;
};

/// Short label like "lwnb/k=50" or "nb" for messages and reports.
std::string config_label(const ClassifierConfig& config);

/// The shared, query-independent part of every classifier: transforms are
/// fitted once on the training rows, which are stored both as model-space
/// instances (for naive Bayes fitting) and as feature vectors (for distance
/// computation).
struct FittedPipeline {
  NumericMode mode = NumericMode::gaussian;
  DatasetSchema source_schema;
  DatasetSchema model_schema;  // discretize mode swaps numerics for bins
  Normalizer normalizer;       // gaussian mode only
  std::optional<Discretizer> discretizer;
  Binarizer binarizer;
  std::vector<Instance> model_rows;  // transformed training instances
  FeatureMatrix features;            // encoded model_rows

  int size() const { return static_cast<int>(model_rows.size()); }
  /// Maps a raw instance into model space (class cell passes through).
  Instance transform_model(const Instance& raw) const;
  /// Encodes a raw instance for distance computation.
  std::vector<double> transform_features(const Instance& raw) const;
};

FittedPipeline fit_pipeline(const Dataset& data, std::span<const int> train,
                            NumericMode mode);

class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(const Dataset& data, std::span<const int> train) = 0;
  void fit(const Dataset& data);
  /// Predicts the class index of a raw instance (its class cell, if any,
  /// is ignored). Requires a prior fit.
  virtual int predict(const Instance& raw) const = 0;
};

std::unique_ptr<Classifier> make_classifier(const ClassifierConfig& config);

/// Every intermediate quantity of one locally weighted prediction, for
/// inspection and fine-grained testing.
struct LwnbTrace {
  std::vector<double> query;  // feature-space encoding
  NeighborSet neighbors;
  WeightVector weights;
  WeightedNBModel model;
  std::vector<double> posterior;
  int predicted = -1;
};

/// Lazy locally weighted naive Bayes: per query, the k nearest training
/// instances (ties included) get linear-kernel weights, rescaled to sum to
/// their count, and a weighted naive Bayes model is fitted on just them.
class LocallyWeightedNB : public Classifier {
 public:
  explicit LocallyWeightedNB(const ClassifierConfig& config);

  void fit(const Dataset& data, std::span<const int> train) override;
  using Classifier::fit;
  int predict(const Instance& raw) const override;
  std::vector<double> posterior(const Instance& raw) const;
  LwnbTrace predict_traced(const Instance& raw) const;
  const FittedPipeline& pipeline() const { return pipeline_; }
  /// k after clamping to the training-set size.
  int effective_k() const { return effective_k_; }

 private:
  ClassifierConfig config_;
  FittedPipeline pipeline_;
  int effective_k_ = 0;
  bool warned_ = false;
};

/// Standard naive Bayes: a single unit-weight model over the training set.
class NaiveBayes : public Classifier {
 public:
  explicit NaiveBayes(const ClassifierConfig& config);

  void fit(const Dataset& data, std::span<const int> train) override;
  using Classifier::fit;
  int predict(const Instance& raw) const override;
  std::vector<double> posterior(const Instance& raw) const;
  const WeightedNBModel& model() const { return model_; }
  const FittedPipeline& pipeline() const { return pipeline_; }

 private:
  ClassifierConfig config_;
  FittedPipeline pipeline_;
  WeightedNBModel model_;
};

/// k-nearest-neighbour vote, optionally weighted by the same kernel as
/// LocallyWeightedNB. Ties at the bandwidth are included in the vote; vote
/// ties break toward the lowest class index.
class KNearest : public Classifier {
 public:
  explicit KNearest(const ClassifierConfig& config);

  void fit(const Dataset& data, std::span<const int> train) override;
  using Classifier::fit;
  int predict(const Instance& raw) const override;
  const FittedPipeline& pipeline() const { return pipeline_; }
  int effective_k() const { return effective_k_; }

 private:
  ClassifierConfig config_;
  FittedPipeline pipeline_;
  int effective_k_ = 0;
  bool warned_ = false;
};

}  // namespace lwnb

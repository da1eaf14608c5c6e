#include "lwnb/classifiers.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>

#include "lwnb/errors.hpp"

namespace lwnb {

std::string to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::lwnb: return "lwnb";
    case ClassifierKind::nb: return "nb";
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::knn_dw: return "knn_dw";
  }
  return "?";
}

std::string to_string(NumericMode mode) {
  return mode == NumericMode::gaussian ? "gaussian" : "discretize";
}

std::string config_label(const ClassifierConfig& config) {
  std::string label = to_string(config.kind);
  if (config.kind != ClassifierKind::nb)
    label += "/k=" + std::to_string(config.k);
  if (config.numeric_mode == NumericMode::discretize) label += "/disc";
  return label;
}

FittedPipeline fit_pipeline(const Dataset& data, std::span<const int> train,
                            NumericMode mode) {
  if (train.empty()) throw InvalidArgument("fit_pipeline: empty training set");
  for (int i : train)
    if (i < 0 || i >= data.size())
      throw InvalidArgument("fit_pipeline: training index out of range");

  FittedPipeline p;
  p.mode = mode;
  p.source_schema = data.schema();
  if (mode == NumericMode::gaussian) {
    p.model_schema = data.schema();
    p.normalizer = Normalizer::fit(data, train);
    p.model_rows.reserve(train.size());
    for (int i : train)
      p.model_rows.push_back(p.normalizer.apply(data.schema(), data.instance(i)));
  } else {
    p.discretizer = Discretizer::fit(data, train);
    p.model_schema = p.discretizer->discretized_schema(data.schema());
    p.model_rows.reserve(train.size());
    for (int i : train)
      p.model_rows.push_back(p.discretizer->apply(data.schema(), data.instance(i)));
  }
  p.binarizer = Binarizer::fit(p.model_schema);
  p.features.rows = static_cast<int>(p.model_rows.size());
  p.features.dims = p.binarizer.dims();
  p.features.penalty = p.binarizer.penalties();
  p.features.data.resize(static_cast<std::size_t>(p.features.rows) * p.features.dims);
  for (int i = 0; i < p.features.rows; ++i) {
    std::span<double> row{p.features.data.data() +
                              static_cast<std::size_t>(i) * p.features.dims,
                          static_cast<std::size_t>(p.features.dims)};
    p.binarizer.encode(p.model_schema, p.model_rows[i], row);
  }
  return p;
}

Instance FittedPipeline::transform_model(const Instance& raw) const {
  return mode == NumericMode::gaussian
             ? normalizer.apply(source_schema, raw)
             : discretizer->apply(source_schema, raw);
}

std::vector<double> FittedPipeline::transform_features(const Instance& raw) const {
  return binarizer.encode(model_schema, transform_model(raw));
}

void Classifier::fit(const Dataset& data) {
  std::vector<int> all(data.size());
  std::iota(all.begin(), all.end(), 0);
  fit(data, all);
}

namespace {

int require_k(const ClassifierConfig& config) {
  if (config.k < 1) throw InvalidArgument("classifier: k must be >= 1");
  return config.k;
}

/// Clamps k to the training-set size. Warns only once per classifier even
/// when the same instance is refitted fold after fold.
int clamp_k(const ClassifierConfig& config, int n, bool& warned) {
  if (config.k <= n) return config.k;
  if (!warned) {
    std::cerr << "warning: " << config_label(config) << ": k exceeds the "
              << n << " training instances; using k = " << n << "\n";
    warned = true;
  }
  return n;
}

KernelFn resolve_kernel(const ClassifierConfig& config) {
  return config.kernel ? config.kernel : KernelFn(linear_kernel);
}

int argmax_lowest(std::span<const double> scores) {
  int best = 0;
  for (int l = 1; l < static_cast<int>(scores.size()); ++l)
    if (scores[l] > scores[best]) best = l;
  return best;
}

}  // namespace

LocallyWeightedNB::LocallyWeightedNB(const ClassifierConfig& config)
    : config_(config) {
  require_k(config_);
  config_.kernel = resolve_kernel(config);
}

void LocallyWeightedNB::fit(const Dataset& data, std::span<const int> train) {
  pipeline_ = fit_pipeline(data, train, config_.numeric_mode);
  effective_k_ = clamp_k(config_, pipeline_.size(), warned_);
}

LwnbTrace LocallyWeightedNB::predict_traced(const Instance& raw) const {
  if (pipeline_.size() == 0) throw InvalidArgument("predict before fit");
  LwnbTrace t;
  t.query = pipeline_.transform_features(raw);
  t.neighbors = k_nearest(pipeline_.features, t.query, effective_k_);
  t.weights = weigh_neighbors(t.neighbors, config_.kernel);

  std::vector<int> local(t.neighbors.r());
  for (int i = 0; i < t.neighbors.r(); ++i) local[i] = t.neighbors.items[i].index;
  FitOptions options;
  options.denominator = config_.denominator;
  t.model = fit_weighted_nb(pipeline_.model_schema, pipeline_.model_rows, local,
                            t.weights.rescaled, options);
  t.posterior = lwnb::posterior(t.model, pipeline_.transform_model(raw));
  t.predicted = argmax_lowest(t.posterior);
  return t;
}

int LocallyWeightedNB::predict(const Instance& raw) const {
  return predict_traced(raw).predicted;
}

std::vector<double> LocallyWeightedNB::posterior(const Instance& raw) const {
  return predict_traced(raw).posterior;
}

NaiveBayes::NaiveBayes(const ClassifierConfig& config) : config_(config) {}

void NaiveBayes::fit(const Dataset& data, std::span<const int> train) {
  pipeline_ = fit_pipeline(data, train, config_.numeric_mode);
  std::vector<double> unit(pipeline_.size(), 1.0);
  FitOptions options;
  options.denominator = config_.denominator;
  model_ = fit_weighted_nb(pipeline_.model_schema, pipeline_.model_rows, unit,
                           options);
}

int NaiveBayes::predict(const Instance& raw) const {
  if (pipeline_.size() == 0) throw InvalidArgument("predict before fit");
  return lwnb::predict(model_, pipeline_.transform_model(raw));
}

std::vector<double> NaiveBayes::posterior(const Instance& raw) const {
  if (pipeline_.size() == 0) throw InvalidArgument("predict before fit");
  return lwnb::posterior(model_, pipeline_.transform_model(raw));
}

KNearest::KNearest(const ClassifierConfig& config) : config_(config) {
  require_k(config_);
  config_.kernel = resolve_kernel(config);
}

void KNearest::fit(const Dataset& data, std::span<const int> train) {
  pipeline_ = fit_pipeline(data, train, config_.numeric_mode);
  effective_k_ = clamp_k(config_, pipeline_.size(), warned_);
}

int KNearest::predict(const Instance& raw) const {
  if (pipeline_.size() == 0) throw InvalidArgument("predict before fit");
  const std::vector<double> query = pipeline_.transform_features(raw);
  const NeighborSet nbrs = k_nearest(pipeline_.features, query, effective_k_);
  std::vector<double> votes(pipeline_.model_schema.class_count(), 0.0);
  if (config_.kind == ClassifierKind::knn_dw) {
    const std::vector<double> w = compute_weights(nbrs, config_.kernel);
    for (int i = 0; i < nbrs.r(); ++i) {
      const Instance& inst = pipeline_.model_rows[nbrs.items[i].index];
      votes[inst.class_label(pipeline_.model_schema)] += w[i];
    }
  } else {
    for (const Neighbor& nb : nbrs.items) {
      const Instance& inst = pipeline_.model_rows[nb.index];
      votes[inst.class_label(pipeline_.model_schema)] += 1.0;
    }
  }
  return argmax_lowest(votes);
}

std::unique_ptr<Classifier> make_classifier(const ClassifierConfig& config) {
  switch (config.kind) {
    case ClassifierKind::lwnb:
      return std::make_unique<LocallyWeightedNB>(config);
    case ClassifierKind::nb:
      return std::make_unique<NaiveBayes>(config);
    case ClassifierKind::knn:
    case ClassifierKind::knn_dw:
      return std::make_unique<KNearest>(config);
  }
  throw InvalidArgument("make_classifier: unknown kind");
}

}  // namespace lwnb

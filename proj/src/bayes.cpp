#include "lwnb/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lwnb/errors.hpp"

namespace lwnb {
namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5 * ln(2*pi)
constexpr double kLogFloor = -1e300;   // stand-in for a -inf factor
constexpr double kShiftFloor = -700.0; // exp() underflows well below this

double gaussian_log_pdf(double x, const GaussianParam& g) {
  const double z = (x - g.mean) / g.stdev;
  const double lf = -kHalfLog2Pi - std::log(g.stdev) - 0.5 * z * z;
  return std::isfinite(lf) ? lf : kLogFloor;
}

/// Weighted first/second moments of one numeric attribute restricted to one
/// class (class < 0 pools every class together). Two-pass for stability.
struct Moments {
  double weight = 0.0;
  double mean = 0.0;
  double var = 0.0;
};

Moments weighted_moments(const DatasetSchema& schema,
                         const std::vector<Instance>& rows,
                         std::span<const int> indices,
                         std::span<const double> weights, int attr, int cls) {
  Moments m;
  double wx = 0.0;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    const Instance& inst = rows[indices[p]];
    if (inst.cell(attr).is_missing()) continue;
    if (cls >= 0 && inst.class_label(schema) != cls) continue;
    m.weight += weights[p];
    wx += weights[p] * inst.cell(attr).as_numeric();
  }
  if (m.weight <= 0.0) return m;
  m.mean = wx / m.weight;
  double wdd = 0.0;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    const Instance& inst = rows[indices[p]];
    if (inst.cell(attr).is_missing()) continue;
    if (cls >= 0 && inst.class_label(schema) != cls) continue;
    const double d = inst.cell(attr).as_numeric() - m.mean;
    wdd += weights[p] * d * d;
  }
  m.var = std::max(wdd / m.weight, 0.0);
  return m;
}

}  // namespace

WeightedNBModel fit_weighted_nb(const DatasetSchema& schema,
                                const std::vector<Instance>& rows,
                                std::span<const int> indices,
                                std::span<const double> weights,
                                const FitOptions& options) {
  if (indices.size() != weights.size())
    throw InvalidArgument("fit_weighted_nb: indices and weights differ in length");
  if (indices.empty())
    throw InvalidArgument("fit_weighted_nb: no instances to fit");
  double total = 0.0;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    const int i = indices[p];
    if (i < 0 || i >= static_cast<int>(rows.size()))
      throw InvalidArgument("fit_weighted_nb: instance index out of range");
    const double w = weights[p];
    if (!(w >= 0.0) || !std::isfinite(w))
      throw InvalidArgument("fit_weighted_nb: weights must be finite and non-negative");
    if (rows[i].cell(schema.class_index()).is_missing())
      throw InvalidArgument("fit_weighted_nb: instance has no class label");
    total += w;
  }
  if (total <= 0.0)
    throw InvalidArgument("fit_weighted_nb: all weights are zero");

  const int o = schema.class_count();
  WeightedNBModel model;
  model.schema = schema;
  model.total_weight = total;
  model.denominator = options.denominator;

  // Priors: Laplace-smoothed share of each class's weight.
  std::vector<double> class_weight(o, 0.0);
  for (std::size_t p = 0; p < indices.size(); ++p)
    class_weight[rows[indices[p]].class_label(schema)] += weights[p];
  model.class_priors.resize(o);
  for (int l = 0; l < o; ++l)
    model.class_priors[l] = (1.0 + class_weight[l]) / (o + total);

  const int m = schema.attribute_count();
  model.nominal_tables.resize(m);
  model.nominal_denoms.resize(m);
  model.gaussians.resize(m);

  for (int j : schema.predictive_indices()) {
    const AttributeSpec& spec = schema.attribute(j);
    if (spec.is_nominal()) {
      const int nj = spec.cardinality();
      // Weight per (class, value) and per class/value alone, counting only
      // instances where the attribute is observed.
      std::vector<std::vector<double>> count(o, std::vector<double>(nj, 0.0));
      std::vector<double> obs_class(o, 0.0);
      std::vector<double> obs_value(nj, 0.0);
      for (std::size_t p = 0; p < indices.size(); ++p) {
        const Instance& inst = rows[indices[p]];
        const Cell& c = inst.cell(j);
        if (c.is_missing()) continue;
        const int l = inst.class_label(schema);
        count[l][c.as_nominal()] += weights[p];
        obs_class[l] += weights[p];
        obs_value[c.as_nominal()] += weights[p];
      }
      auto& table = model.nominal_tables[j];
      auto& denom = model.nominal_denoms[j];
      table.assign(o, std::vector<double>(nj, 0.0));
      denom.assign(o, 0.0);
      for (int l = 0; l < o; ++l) {
        denom[l] = options.denominator == NominalDenominator::class_weight
                       ? nj + obs_class[l]
                       : static_cast<double>(nj);
        for (int v = 0; v < nj; ++v) {
          const double d = options.denominator == NominalDenominator::class_weight
                               ? nj + obs_class[l]
                               : nj + obs_value[v];
          table[l][v] = (1.0 + count[l][v]) / d;
        }
      }
    } else {
      const Moments pooled =
          weighted_moments(schema, rows, indices, weights, j, -1);
      auto& params = model.gaussians[j];
      params.assign(o, GaussianParam{});
      if (pooled.weight <= 0.0) continue;  // never observed: skip at predict
      // Observed range drives the relative part of the stdev floor.
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (std::size_t p = 0; p < indices.size(); ++p) {
        const Cell& c = rows[indices[p]].cell(j);
        if (c.is_missing()) continue;
        lo = std::min(lo, c.as_numeric());
        hi = std::max(hi, c.as_numeric());
      }
      const double range = hi - lo;
      for (int l = 0; l < o; ++l) {
        Moments mo = weighted_moments(schema, rows, indices, weights, j, l);
        if (mo.weight <= 0.0) mo = pooled;  // class unseen here: pooled stats
        params[l].mean = mo.mean;
        params[l].stdev = std::max({std::sqrt(mo.var),
                                    options.stdev_rel_floor * range,
                                    options.stdev_abs_floor});
        params[l].observed = true;
      }
    }
  }
  return model;
}

WeightedNBModel fit_weighted_nb(const DatasetSchema& schema,
                                const std::vector<Instance>& rows,
                                std::span<const double> weights,
                                const FitOptions& options) {
  std::vector<int> all(rows.size());
  std::iota(all.begin(), all.end(), 0);
  return fit_weighted_nb(schema, rows, all, weights, options);
}

std::vector<double> posterior(const WeightedNBModel& model, const Instance& inst) {
  const DatasetSchema& schema = model.schema;
  const int o = schema.class_count();
  std::vector<double> log_score(o);
  for (int l = 0; l < o; ++l) log_score[l] = std::log(model.class_priors[l]);

  for (int j : schema.predictive_indices()) {
    const Cell& c = inst.cell(j);
    if (c.is_missing()) continue;
    const AttributeSpec& spec = schema.attribute(j);
    if (spec.is_nominal()) {
      const int v = c.as_nominal();
      const auto& table = model.nominal_tables[j];
      for (int l = 0; l < o; ++l) {
        const double p = (v >= 0 && v < spec.cardinality())
                             ? table[l][v]
                             : 1.0 / model.nominal_denoms[j][l];
        log_score[l] += std::log(p);
      }
    } else {
      if (!model.gaussians[j].empty() && model.gaussians[j][0].observed) {
        for (int l = 0; l < o; ++l)
          log_score[l] += gaussian_log_pdf(c.as_numeric(), model.gaussians[j][l]);
      }
    }
  }

  const double shift = *std::max_element(log_score.begin(), log_score.end());
  std::vector<double> post(o);
  double sum = 0.0;
  for (int l = 0; l < o; ++l) {
    post[l] = std::exp(std::max(log_score[l] - shift, kShiftFloor));
    sum += post[l];
  }
  for (int l = 0; l < o; ++l) post[l] /= sum;  // sum >= 1: the max term is 1
  return post;
}

int predict(const WeightedNBModel& model, const Instance& inst) {
  const std::vector<double> post = posterior(model, inst);
  int best = 0;
  for (int l = 1; l < static_cast<int>(post.size()); ++l)
    if (post[l] > post[best]) best = l;
  return best;
}

namespace {

nlohmann::json schema_to_json(const DatasetSchema& schema) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const AttributeSpec& a : schema.attributes()) {
    nlohmann::json ja;
    ja["name"] = a.name;
    ja["kind"] = a.is_nominal() ? "nominal" : "numeric";
    if (a.is_nominal()) ja["values"] = a.values;
    attrs.push_back(std::move(ja));
  }
  return nlohmann::json{{"attributes", std::move(attrs)},
                        {"class_index", schema.class_index()}};
}

DatasetSchema schema_from_json(const nlohmann::json& doc) {
  std::vector<AttributeSpec> attrs;
  for (const auto& ja : doc.at("attributes")) {
    AttributeSpec a;
    a.name = ja.at("name").get<std::string>();
    a.kind = ja.at("kind").get<std::string>() == "nominal" ? AttrKind::nominal
                                                           : AttrKind::numeric;
    if (a.is_nominal()) a.values = ja.at("values").get<std::vector<std::string>>();
    attrs.push_back(std::move(a));
  }
  return DatasetSchema(std::move(attrs), doc.at("class_index").get<int>());
}

}  // namespace

nlohmann::json model_to_json(const WeightedNBModel& model) {
  nlohmann::json doc;
  doc["format"] = "weighted-nb";
  doc["format_version"] = 1;
  doc["schema"] = schema_to_json(model.schema);
  doc["class_priors"] = model.class_priors;
  doc["total_weight"] = model.total_weight;
  doc["denominator"] = model.denominator == NominalDenominator::class_weight
                           ? "class_weight"
                           : "value_weight";
  nlohmann::json attrs = nlohmann::json::array();
  for (int j = 0; j < model.schema.attribute_count(); ++j) {
    nlohmann::json ja;
    if (j == model.schema.class_index()) {
      ja["role"] = "class";
    } else if (model.schema.attribute(j).is_nominal()) {
      ja["role"] = "nominal";
      ja["tables"] = model.nominal_tables[j];
      ja["unseen_denominators"] = model.nominal_denoms[j];
    } else {
      ja["role"] = "gaussian";
      nlohmann::json per_class = nlohmann::json::array();
      for (const GaussianParam& g : model.gaussians[j])
        per_class.push_back({{"mean", g.mean},
                             {"stdev", g.stdev},
                             {"observed", g.observed}});
      ja["per_class"] = std::move(per_class);
    }
    attrs.push_back(std::move(ja));
  }
  doc["attributes"] = std::move(attrs);
  return doc;
}

WeightedNBModel model_from_json(const nlohmann::json& doc) {
  if (doc.at("format").get<std::string>() != "weighted-nb")
    throw InvalidArgument("model_from_json: not a weighted-nb document");
  if (doc.at("format_version").get<int>() != 1)
    throw InvalidArgument("model_from_json: unsupported format_version");
  WeightedNBModel model;
  model.schema = schema_from_json(doc.at("schema"));
  model.class_priors = doc.at("class_priors").get<std::vector<double>>();
  model.total_weight = doc.at("total_weight").get<double>();
  model.denominator =
      doc.at("denominator").get<std::string>() == "value_weight"
          ? NominalDenominator::value_weight
          : NominalDenominator::class_weight;
  const int m = model.schema.attribute_count();
  model.nominal_tables.resize(m);
  model.nominal_denoms.resize(m);
  model.gaussians.resize(m);
  const auto& attrs = doc.at("attributes");
  if (static_cast<int>(attrs.size()) != m)
    throw InvalidArgument("model_from_json: attribute count mismatch");
  for (int j = 0; j < m; ++j) {
    const auto& ja = attrs.at(j);
    const std::string role = ja.at("role").get<std::string>();
    if (role == "nominal") {
      model.nominal_tables[j] =
          ja.at("tables").get<std::vector<std::vector<double>>>();
      model.nominal_denoms[j] =
          ja.at("unseen_denominators").get<std::vector<double>>();
    } else if (role == "gaussian") {
      for (const auto& jg : ja.at("per_class"))
        model.gaussians[j].push_back(
            GaussianParam{jg.at("mean").get<double>(),
                          jg.at("stdev").get<double>(),
                          jg.at("observed").get<bool>()});
    }
  }
  return model;
}

}  // namespace lwnb

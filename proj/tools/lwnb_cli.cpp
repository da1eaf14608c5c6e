// Command-line front end: dataset generation, cross-validated evaluation,
// pairwise significance comparison, and accuracy-vs-k sweeps. Every file
// written gets a JSON manifest next to it that fully determines the run;
// re-running with the same manifest reproduces every byte.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lwnb/classifiers.hpp"
#include "lwnb/dataset.hpp"
#include "lwnb/errors.hpp"
#include "lwnb/evaluation.hpp"
#include "lwnb/generators.hpp"
#include "lwnb/version.hpp"

namespace {

using nlohmann::json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LWNB_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 42;
}

/// "kind[:k=K][:mode=gaussian|discretize][:denom=class|value]",
/// e.g. "lwnb:k=50" or "nb:mode=discretize".
lwnb::ClassifierConfig parse_classifier_spec(const std::string& spec) {
  lwnb::ClassifierConfig config;
  std::stringstream ss(spec);
  std::string token;
  if (!std::getline(ss, token, ':') || token.empty())
    throw lwnb::InvalidArgument("empty classifier spec");
  if (token == "lwnb")
    config.kind = lwnb::ClassifierKind::lwnb;
  else if (token == "nb")
    config.kind = lwnb::ClassifierKind::nb;
  else if (token == "knn")
    config.kind = lwnb::ClassifierKind::knn;
  else if (token == "knn_dw")
    config.kind = lwnb::ClassifierKind::knn_dw;
  else
    throw lwnb::InvalidArgument("unknown classifier kind '" + token +
                                "' (expected lwnb, nb, knn or knn_dw)");
  while (std::getline(ss, token, ':')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw lwnb::InvalidArgument("bad classifier option '" + token +
                                  "' in spec '" + spec + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "k") {
      if (config.kind == lwnb::ClassifierKind::nb)
        throw lwnb::InvalidArgument("nb takes no k");
      try {
        config.k = std::stoi(value);
      } catch (const std::exception&) {
        throw lwnb::InvalidArgument("bad k value '" + value + "'");
      }
      if (config.k < 1) throw lwnb::InvalidArgument("k must be >= 1");
    } else if (key == "mode") {
      if (value == "gaussian")
        config.numeric_mode = lwnb::NumericMode::gaussian;
      else if (value == "discretize")
        config.numeric_mode = lwnb::NumericMode::discretize;
      else
        throw lwnb::InvalidArgument("bad mode '" + value +
                                    "' (gaussian or discretize)");
    } else if (key == "denom") {
      if (value == "class")
        config.denominator = lwnb::NominalDenominator::class_weight;
      else if (value == "value")
        config.denominator = lwnb::NominalDenominator::value_weight;
      else
        throw lwnb::InvalidArgument("bad denom '" + value +
                                    "' (class or value)");
    } else {
      throw lwnb::InvalidArgument("unknown classifier option '" + key + "'");
    }
  }
  return config;
}

json config_json(const std::string& spec, const lwnb::ClassifierConfig& c) {
  json j;
  j["spec"] = spec;
  j["kind"] = lwnb::to_string(c.kind);
  if (c.kind != lwnb::ClassifierKind::nb) j["k"] = c.k;
  j["numeric_mode"] = lwnb::to_string(c.numeric_mode);
  j["denominator"] = c.denominator == lwnb::NominalDenominator::class_weight
                         ? "class"
                         : "value";
  return j;
}

/// Writes via a temp file + rename so readers never observe a partial file.
void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw lwnb::Error("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw lwnb::Error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void write_manifest(const std::string& out_path, json manifest) {
  manifest["tool_version"] = lwnb::kVersion;
  write_atomic(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

std::string dataset_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

lwnb::Dataset load_dataset(const std::string& path) {
  return lwnb::load_csv_file(path);
}

std::string report_to_string(const lwnb::EvalReport& report) {
  std::ostringstream out;
  lwnb::write_report_tsv(report, out);
  return out.str();
}

void emit(const std::string& out_path, const std::string& content,
          const json& manifest) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_atomic(out_path, content);
    write_manifest(out_path, manifest);
  }
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

int cmd_generate(const std::string& kind, int n, std::uint64_t seed,
                 const std::string& out_path) {
  lwnb::SyntheticSpec spec;
  if (kind == "two-spheres" || kind == "two_spheres")
    spec.kind = lwnb::SyntheticKind::two_spheres;
  else if (kind == "checkers")
    spec.kind = lwnb::SyntheticKind::checkers;
  else
    throw lwnb::InvalidArgument("unknown kind '" + kind +
                                "' (two-spheres or checkers)");
  spec.n = n;
  spec.seed = seed;
  const lwnb::Dataset d = lwnb::gen_synthetic(spec);

  std::ostringstream csv;
  lwnb::write_csv(d, csv);
  write_atomic(out_path, csv.str());

  json manifest;
  manifest["command"] = "generate";
  manifest["kind"] = kind;
  manifest["n"] = n;
  manifest["seed"] = seed;
  manifest["out"] = out_path;
  write_manifest(out_path, manifest);
  return 0;
}

int cmd_evaluate(const std::string& data_path,
                 const std::vector<std::string>& specs, int runs, int folds,
                 std::uint64_t seed, const std::string& out_path) {
  const lwnb::Dataset d = load_dataset(data_path);
  const auto partitions = lwnb::make_run_partitions(d, runs, folds, seed);

  lwnb::EvalReport report;
  for (const std::string& spec : specs) {
    lwnb::EvalRow row;
    row.dataset = dataset_name(data_path);
    row.config = parse_classifier_spec(spec);
    row.accuracies = lwnb::cross_validate_partitions(d, row.config, partitions);
    row.mean_acc = lwnb::mean(row.accuracies);
    row.stdev = lwnb::sample_stdev(row.accuracies);
    report.rows.push_back(std::move(row));
  }

  json manifest;
  manifest["command"] = "evaluate";
  manifest["data"] = data_path;
  json clfs = json::array();
  for (std::size_t i = 0; i < specs.size(); ++i)
    clfs.push_back(config_json(specs[i], report.rows[i].config));
  manifest["classifiers"] = std::move(clfs);
  manifest["runs"] = runs;
  manifest["folds"] = folds;
  manifest["seed"] = seed;
  manifest["out"] = out_path;
  emit(out_path, report_to_string(report), manifest);
  return 0;
}

int cmd_compare(const std::string& data_path, const std::string& baseline_spec,
                const std::vector<std::string>& challenger_specs, int runs,
                int folds, std::uint64_t seed, const std::string& out_path) {
  const lwnb::Dataset d = load_dataset(data_path);
  const auto partitions = lwnb::make_run_partitions(d, runs, folds, seed);
  const double train_fraction = static_cast<double>(folds - 1) / folds;

  const lwnb::ClassifierConfig baseline = parse_classifier_spec(baseline_spec);
  const std::vector<double> base_accs =
      lwnb::cross_validate_partitions(d, baseline, partitions);

  lwnb::EvalReport report;
  for (const std::string& spec : challenger_specs) {
    lwnb::EvalRow row;
    row.dataset = dataset_name(data_path);
    row.config = parse_classifier_spec(spec);
    row.accuracies = lwnb::cross_validate_partitions(d, row.config, partitions);
    row.mean_acc = lwnb::mean(row.accuracies);
    row.stdev = lwnb::sample_stdev(row.accuracies);
    row.vs_baseline = lwnb::corrected_resampled_ttest(
        row.accuracies, base_accs, train_fraction);
    report.rows.push_back(std::move(row));
  }

  json manifest;
  manifest["command"] = "compare";
  manifest["data"] = data_path;
  manifest["baseline"] = config_json(baseline_spec, baseline);
  json clfs = json::array();
  for (std::size_t i = 0; i < challenger_specs.size(); ++i)
    clfs.push_back(config_json(challenger_specs[i], report.rows[i].config));
  manifest["challengers"] = std::move(clfs);
  manifest["runs"] = runs;
  manifest["folds"] = folds;
  manifest["seed"] = seed;
  manifest["out"] = out_path;
  emit(out_path, report_to_string(report), manifest);
  return 0;
}

int cmd_sweep_k(const std::string& data_path,
                const std::vector<std::string>& specs,
                const std::vector<int>& ks, int runs, int folds,
                std::uint64_t seed, const std::string& out_path) {
  if (ks.empty()) throw lwnb::InvalidArgument("sweep-k: no k values given");
  const lwnb::Dataset d = load_dataset(data_path);
  const auto partitions = lwnb::make_run_partitions(d, runs, folds, seed);

  std::vector<lwnb::ClassifierConfig> configs;
  for (const std::string& spec : specs)
    configs.push_back(parse_classifier_spec(spec));

  // means[column][row]: one accuracy series per classifier spec.
  std::vector<std::vector<double>> means(specs.size());
  for (std::size_t c = 0; c < configs.size(); ++c) {
    if (configs[c].kind == lwnb::ClassifierKind::nb) {
      // k does not apply: one evaluation, repeated down the column.
      const double acc =
          lwnb::mean(lwnb::cross_validate_partitions(d, configs[c], partitions));
      means[c].assign(ks.size(), acc);
      continue;
    }
    for (int k : ks) {
      lwnb::ClassifierConfig cfg = configs[c];
      cfg.k = k;
      means[c].push_back(
          lwnb::mean(lwnb::cross_validate_partitions(d, cfg, partitions)));
    }
  }

  std::ostringstream out;
  out << "# k";
  for (const std::string& spec : specs) out << ' ' << spec;
  out << '\n';
  for (std::size_t row = 0; row < ks.size(); ++row) {
    out << ks[row];
    for (std::size_t c = 0; c < specs.size(); ++c)
      out << ' ' << percent(means[c][row]);
    out << '\n';
  }

  json manifest;
  manifest["command"] = "sweep-k";
  manifest["data"] = data_path;
  json clfs = json::array();
  for (std::size_t i = 0; i < specs.size(); ++i)
    clfs.push_back(config_json(specs[i], configs[i]));
  manifest["classifiers"] = std::move(clfs);
  manifest["k_values"] = ks;
  manifest["runs"] = runs;
  manifest["folds"] = folds;
  manifest["seed"] = seed;
  manifest["out"] = out_path;
  emit(out_path, out.str(), manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally weighted naive Bayes experiment harness"};
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset CSV");
  std::string gen_kind;
  int gen_n = 1000;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "two-spheres or checkers")->required();
  gen->add_option("--n", gen_n, "total instance count")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "rng seed (default $LWNB_SEED or 42)");
  gen->add_option("--out", gen_out, "output CSV path")->required();

  // evaluate
  auto* eval = app.add_subcommand(
      "evaluate", "Cross-validate classifiers and report mean accuracy");
  std::string eval_data, eval_out;
  std::vector<std::string> eval_specs;
  int runs = 10, folds = 10;
  eval->add_option("--data", eval_data, "dataset CSV path")->required();
  eval->add_option("--clf", eval_specs,
                   "classifier spec, e.g. lwnb:k=50 (repeatable)")
      ->required();
  eval->add_option("--runs", runs, "cross-validation repetitions")
      ->check(CLI::PositiveNumber);
  eval->add_option("--folds", folds, "fold count")->check(CLI::Range(2, 1 << 20));
  eval->add_option("--seed", seed, "rng seed (default $LWNB_SEED or 42)");
  eval->add_option("--out", eval_out, "output TSV path (default stdout)");

  // compare
  auto* cmp = app.add_subcommand(
      "compare", "Significance-test challengers against a baseline");
  std::string cmp_data, cmp_base, cmp_out;
  std::vector<std::string> cmp_specs;
  cmp->add_option("--data", cmp_data, "dataset CSV path")->required();
  cmp->add_option("--baseline", cmp_base, "baseline classifier spec")
      ->required();
  cmp->add_option("--clf", cmp_specs, "challenger spec (repeatable)")
      ->required();
  cmp->add_option("--runs", runs, "cross-validation repetitions")
      ->check(CLI::PositiveNumber);
  cmp->add_option("--folds", folds, "fold count")->check(CLI::Range(2, 1 << 20));
  cmp->add_option("--seed", seed, "rng seed (default $LWNB_SEED or 42)");
  cmp->add_option("--out", cmp_out, "output TSV path (default stdout)");

  // sweep-k
  auto* sweep = app.add_subcommand(
      "sweep-k", "Mean accuracy per k, one column per classifier");
  std::string sweep_data, sweep_out;
  std::vector<std::string> sweep_specs;
  std::vector<int> sweep_ks;
  int sweep_runs = 1;
  sweep->add_option("--data", sweep_data, "dataset CSV path")->required();
  sweep->add_option("--clf", sweep_specs,
                    "classifier spec; its k is overridden per sweep point")
      ->required();
  sweep->add_option("--k", sweep_ks, "k values, comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  sweep->add_option("--runs", sweep_runs, "cross-validation repetitions")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--folds", folds, "fold count")
      ->check(CLI::Range(2, 1 << 20));
  sweep->add_option("--seed", seed, "rng seed (default $LWNB_SEED or 42)");
  sweep->add_option("--out", sweep_out, "output series path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(gen_kind, gen_n, seed, gen_out);
    if (eval->parsed())
      return cmd_evaluate(eval_data, eval_specs, runs, folds, seed, eval_out);
    if (cmp->parsed())
      return cmd_compare(cmp_data, cmp_base, cmp_specs, runs, folds, seed,
                         cmp_out);
    if (sweep->parsed())
      return cmd_sweep_k(sweep_data, sweep_specs, sweep_ks, sweep_runs, folds,
                         seed, sweep_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

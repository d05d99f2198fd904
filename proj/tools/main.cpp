// Command-line front end: synth | extract | evaluate | compare | importance.
//
// Reports are written atomically and contain no wall-clock values, so a rerun
// with identical flags and inputs produces a byte-identical payload. Timing
// diagnostics go to stderr only. CRFD_THREADS caps worker parallelism.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crfdspam/evaluate.hpp"
#include "crfdspam/features.hpp"
#include "crfdspam/importance.hpp"
#include "crfdspam/ingest.hpp"
#include "crfdspam/metrics.hpp"
#include "crfdspam/report.hpp"
#include "crfdspam/synth.hpp"
#include "crfdspam/transform.hpp"
#include "crfdspam/util.hpp"

namespace {

using nlohmann::ordered_json;

struct CommonArgs {
  std::string input;
  std::string profiles;
  std::string mode = "basic";
  std::string crfd_scope = "train_only";
  int folds = 5;
  std::uint64_t seed = 42;
  std::string algorithms;  // empty = paper defaults
  bool group_by_reviewer = false;
  std::optional<double> reference_date;
  std::string out;
  std::string format = "json";
};

void add_dataset_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--input", args.input, "reviews file (.csv or .jsonl)")->required();
  cmd->add_option("--profiles", args.profiles, "reviewer profiles file")->required();
}

void add_cv_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--crfd-scope", args.crfd_scope, "transform fitting scope")
      ->check(CLI::IsMember({"train_only", "full_dataset"}));
  cmd->add_option("--folds", args.folds, "number of stratified folds")->check(CLI::Range(2, 1000));
  cmd->add_option("--seed", args.seed, "seed for fold shuffling");
  cmd->add_option("--algorithms", args.algorithms,
                  "comma list of classifier specs, e.g. cart:depth=10,knn:k=5,log_reg");
  cmd->add_flag("--group-by-reviewer", args.group_by_reviewer,
                "one row per reviewer instead of one per review");
  cmd->add_option("--reference-date", args.reference_date,
                  "reference day for reviewer expertise (default: max review timestamp)");
}

void add_output_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--out", args.out, "output file")->required();
  cmd->add_option("--format", args.format, "report format")
      ->check(CLI::IsMember({"json", "md"}));
}

std::vector<crfdspam::ClassifierSpec> parse_algorithms(const std::string& text) {
  if (text.empty()) return crfdspam::default_specs();
  std::vector<crfdspam::ClassifierSpec> specs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(',', start);
    const std::string token =
        pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
    if (!token.empty()) specs.push_back(crfdspam::ClassifierSpec::parse(token));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (specs.empty()) throw std::invalid_argument("--algorithms resolved to an empty list");
  return specs;
}

crfdspam::Dataset load_pipeline(const CommonArgs& args) {
  std::vector<std::string> warnings;
  crfdspam::Dataset d = crfdspam::load_dataset(args.input, args.profiles, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  const crfdspam::TagResult tagged = crfdspam::tag_reviewers(d);
  if (tagged.stats.mix_reviewers > 0)
    std::cerr << "note: discarded " << tagged.stats.mix_reviewers << " mix reviewer(s) with "
              << tagged.stats.dropped_reviews << " review(s)\n";
  crfdspam::Dataset ready = crfdspam::derive_business_stats(tagged.dataset);
  const auto violations = crfdspam::validate_dataset(ready);
  if (!violations.empty()) {
    for (const auto& v : violations)
      std::cerr << "invalid dataset: " << v.instance_id << ": " << v.rule << " (" << v.detail
                << ")\n";
    throw std::runtime_error("dataset failed validation with " +
                             std::to_string(violations.size()) + " violation(s)");
  }
  return ready;
}

ordered_json config_json(const CommonArgs& args, const std::string& command,
                         const std::vector<crfdspam::ClassifierSpec>& specs) {
  ordered_json cfg;
  cfg["command"] = command;
  cfg["input"] = args.input;
  cfg["profiles"] = args.profiles;
  cfg["mode"] = args.mode;
  cfg["crfd_scope"] = args.crfd_scope;
  cfg["folds"] = args.folds;
  cfg["seed"] = args.seed;
  ordered_json algos = ordered_json::array();
  for (const auto& s : specs) algos.push_back(s.label());
  cfg["algorithms"] = std::move(algos);
  cfg["group_by_reviewer"] = args.group_by_reviewer;
  if (args.reference_date)
    cfg["reference_date"] = *args.reference_date;
  else
    cfg["reference_date"] = "max_review_timestamp";
  cfg["threshold"] = 0.5;
  cfg["out"] = args.out;
  cfg["format"] = args.format;
  return cfg;
}

void write_payload(const CommonArgs& args, const ordered_json& payload) {
  crfdspam::util::write_file_atomic(args.out, payload.dump(2) + "\n");
}

crfdspam::CvOptions cv_options(const CommonArgs& args, const std::string& mode_override = "") {
  crfdspam::CvOptions opt;
  opt.mode = crfdspam::feature_mode_from_string(mode_override.empty() ? args.mode : mode_override);
  opt.scope = crfdspam::crfd_scope_from_string(args.crfd_scope);
  opt.folds = args.folds;
  opt.seed = args.seed;
  opt.group_by_reviewer = args.group_by_reviewer;
  opt.reference_date = args.reference_date;
  return opt;
}

// --- subcommands -----------------------------------------------------------

int run_synth(const std::string& out_dir, std::size_t reviewers, double fake_ratio,
              double zipf_exponent, std::uint64_t seed, std::size_t reviews_min,
              std::size_t reviews_max, std::size_t businesses) {
  crfdspam::SynthConfig config;
  config.n_reviewers = reviewers;
  config.fake_ratio = fake_ratio;
  config.zipf_exponent = zipf_exponent;
  config.seed = seed;
  config.reviews_per_reviewer = {reviews_min, reviews_max};
  config.n_businesses = businesses;
  const crfdspam::Dataset d = crfdspam::generate(config);

  const std::filesystem::path dir(out_dir);
  crfdspam::write_reviews_csv(d, dir / "reviews.csv");
  crfdspam::write_profiles_csv(d, dir / "profiles.csv");

  const crfdspam::FeatureMoments moments = crfdspam::summarize(d);
  std::cerr << "wrote " << d.reviews.size() << " reviews, " << d.profiles.size()
            << " profiles, " << d.businesses.size() << " businesses to " << out_dir << "\n";
  std::cerr << "feature (mean, std):\n";
  for (std::size_t i = 0; i < crfdspam::kFeatureCount; ++i)
    std::cerr << "  " << crfdspam::kFeatureNames[i] << ": (" << moments.mean[i] << ", "
              << moments.std_dev[i] << ")\n";
  return 0;
}

int run_extract(const CommonArgs& args, const std::string& corr_path,
                const std::string& tables_path) {
  const crfdspam::Dataset d = load_pipeline(args);
  crfdspam::MatrixOptions mo;
  mo.group_by_reviewer = args.group_by_reviewer;
  mo.reference_date = args.reference_date;
  const crfdspam::LabeledMatrix raw = crfdspam::build_matrix(d, mo);

  const crfdspam::FeatureMode mode = crfdspam::feature_mode_from_string(args.mode);
  const crfdspam::ColumnTransforms transforms = crfdspam::ColumnTransforms::fit(mode, raw);
  const crfdspam::LabeledMatrix out = transforms.apply(raw);
  crfdspam::write_matrix_csv(out, args.out);
  std::cerr << "wrote " << out.rows() << " x " << out.width() << " matrix to " << args.out
            << "\n";

  if (!corr_path.empty()) {
    const std::vector<double> corr = crfdspam::correlation_matrix(raw);
    crfdspam::write_correlation_csv(raw, corr, corr_path);
    std::cerr << "wrote correlation matrix to " << corr_path << "\n";
  }
  if (!tables_path.empty()) {
    if (mode != crfdspam::FeatureMode::cumulative)
      throw std::runtime_error("--tables requires --mode cumulative");
    crfdspam::util::write_file_atomic(
        tables_path,
        crfdspam::tables_to_json(transforms.tables(), out.feature_names) + "\n");
    std::cerr << "wrote fitted tables to " << tables_path << "\n";
  }
  return 0;
}

int run_evaluate(const CommonArgs& args) {
  const auto specs = parse_algorithms(args.algorithms);
  const crfdspam::Dataset d = load_pipeline(args);
  const auto start = std::chrono::steady_clock::now();
  const crfdspam::EvaluationReport report = crfdspam::cross_validate(d, specs, cv_options(args));
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::cerr << "cross-validation finished in " << elapsed.count() << " s\n";

  if (args.format == "md") {
    std::string md = "# Evaluation (" + args.mode + " features)\n\n";
    md += crfdspam::report_to_markdown(report);
    crfdspam::util::write_file_atomic(args.out, md);
  } else {
    ordered_json payload;
    payload["tool"] = "crfdspam";
    payload["config"] = config_json(args, "evaluate", specs);
    payload["results"] = crfdspam::report_to_json(report);
    write_payload(args, payload);
  }
  return 0;
}

int run_compare(const CommonArgs& args) {
  const auto specs = parse_algorithms(args.algorithms);
  const crfdspam::Dataset d = load_pipeline(args);
  const auto start = std::chrono::steady_clock::now();
  const crfdspam::EvaluationReport basic =
      crfdspam::cross_validate(d, specs, cv_options(args, "basic"));
  const crfdspam::EvaluationReport cumulative =
      crfdspam::cross_validate(d, specs, cv_options(args, "cumulative"));
  const auto rows = crfdspam::compare_feature_sets(basic, cumulative);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::cerr << "both cross-validations finished in " << elapsed.count() << " s\n";

  if (args.format == "md") {
    std::string md = "# Basic vs cumulative features\n\n";
    md += crfdspam::improvement_to_markdown(rows);
    md += "\n## Basic features\n\n" + crfdspam::report_to_markdown(basic);
    md += "\n## Cumulative features\n\n" + crfdspam::report_to_markdown(cumulative);
    crfdspam::util::write_file_atomic(args.out, md);
  } else {
    ordered_json payload;
    payload["tool"] = "crfdspam";
    payload["config"] = config_json(args, "compare", specs);
    payload["results"]["improvement"] = crfdspam::improvement_to_json(rows);
    payload["results"]["basic"] = crfdspam::report_to_json(basic);
    payload["results"]["cumulative"] = crfdspam::report_to_json(cumulative);
    write_payload(args, payload);
  }
  return 0;
}

int run_importance(const CommonArgs& args, int depth, std::size_t top_k,
                   const std::string& csv_path) {
  CommonArgs local = args;
  if (local.mode == "basic") local.mode = "cumulative";  // ranking is over transformed features
  const crfdspam::Dataset d = load_pipeline(local);
  crfdspam::MatrixOptions mo;
  mo.group_by_reviewer = local.group_by_reviewer;
  mo.reference_date = local.reference_date;
  const crfdspam::LabeledMatrix matrix = crfdspam::build_matrix(d, mo);

  const crfdspam::CvOptions options = cv_options(local);
  const crfdspam::FoldAssignment folds =
      crfdspam::stratified_folds(matrix.labels, options.folds, options.seed);
  const auto fold_sets = crfdspam::prepare_folds(matrix, folds, options.mode, options.scope);

  crfdspam::ClassifierSpec tree_spec;
  tree_spec.algorithm = crfdspam::Algorithm::cart;
  tree_spec.max_depth = depth;
  std::vector<crfdspam::Model> fold_models;
  for (const auto& fm : fold_sets)
    fold_models.push_back(crfdspam::fit_model(tree_spec, fm.train, options.seed));
  const auto ranking = crfdspam::averaged_importance(fold_models, matrix.feature_names);
  const auto selection = crfdspam::select_top_k(ranking, top_k, matrix);

  // Retrain with and without the selection, at the requested depth plus the
  // shallower companion model.
  crfdspam::ClassifierSpec shallow = tree_spec;
  shallow.max_depth = 5;
  std::vector<crfdspam::ClassifierSpec> tree_specs = {tree_spec};
  if (shallow.max_depth != tree_spec.max_depth) tree_specs.push_back(shallow);
  const crfdspam::EvaluationReport with_selection =
      crfdspam::cross_validate_matrix(selection.matrix, tree_specs, options);
  const crfdspam::EvaluationReport without_selection =
      crfdspam::cross_validate_matrix(matrix, tree_specs, options);

  if (!csv_path.empty())
    crfdspam::util::write_file_atomic(csv_path, crfdspam::importance_to_csv(ranking));

  if (local.format == "md") {
    std::string md = "# Gini feature importance (" + std::string("depth=") +
                     std::to_string(depth) + ", " + local.mode + " features)\n\n";
    md += crfdspam::importance_to_markdown(ranking);
    md += "\n## Selected features: ";
    for (std::size_t i = 0; i < selection.features.size(); ++i)
      md += (i > 0 ? ", " : "") + selection.features[i];
    md += "\n\n## With selection\n\n" + crfdspam::report_to_markdown(with_selection);
    md += "\n## Without selection\n\n" + crfdspam::report_to_markdown(without_selection);
    crfdspam::util::write_file_atomic(local.out, md);
  } else {
    ordered_json payload;
    payload["tool"] = "crfdspam";
    auto cfg = config_json(local, "importance", tree_specs);
    cfg["depth"] = depth;
    cfg["top_k"] = top_k;
    payload["config"] = std::move(cfg);
    payload["results"]["ranking"] = crfdspam::importance_to_json(ranking);
    payload["results"]["selected_features"] = selection.features;
    payload["results"]["with_selection"] = crfdspam::report_to_json(with_selection);
    payload["results"]["without_selection"] = crfdspam::report_to_json(without_selection);
    write_payload(local, payload);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opinion spam detection via cumulative relative frequency features"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
  std::string synth_out;
  std::size_t reviewers = 2000;
  double fake_ratio = 0.13;
  double zipf_exponent = 1.2;
  std::uint64_t synth_seed = 42;
  std::size_t reviews_min = 1, reviews_max = 30, businesses = 0;
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--reviewers", reviewers, "number of reviewers");
  synth->add_option("--fake-ratio", fake_ratio, "fraction of fake reviewers");
  synth->add_option("--zipf-exponent", zipf_exponent, "power-law exponent for count features");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--reviews-min", reviews_min, "minimum reviews per reviewer");
  synth->add_option("--reviews-max", reviews_max, "maximum reviews per reviewer");
  synth->add_option("--businesses", businesses, "number of businesses (0 = auto)");

  // extract
  CommonArgs extract_args;
  auto* extract = app.add_subcommand("extract", "write the feature matrix CSV");
  add_dataset_flags(extract, extract_args);
  extract->add_option("--mode", extract_args.mode, "feature mode")
      ->check(CLI::IsMember({"basic", "cumulative", "minmax", "zscore"}));
  extract->add_flag("--group-by-reviewer", extract_args.group_by_reviewer,
                    "one row per reviewer");
  extract->add_option("--reference-date", extract_args.reference_date,
                      "reference day for reviewer expertise");
  extract->add_option("--out", extract_args.out, "matrix CSV path")->required();
  std::string corr_path, tables_path;
  extract->add_option("--corr", corr_path, "also write the feature correlation matrix CSV");
  extract->add_option("--tables", tables_path, "also write fitted CRFD tables as JSON");

  // evaluate
  CommonArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "cross-validate one feature mode");
  add_dataset_flags(evaluate, eval_args);
  evaluate->add_option("--mode", eval_args.mode, "feature mode")
      ->check(CLI::IsMember({"basic", "cumulative", "minmax", "zscore"}));
  add_cv_flags(evaluate, eval_args);
  add_output_flags(evaluate, eval_args);

  // compare
  CommonArgs compare_args;
  auto* compare = app.add_subcommand("compare", "basic vs cumulative comparison table");
  add_dataset_flags(compare, compare_args);
  add_cv_flags(compare, compare_args);
  add_output_flags(compare, compare_args);

  // importance
  CommonArgs imp_args;
  imp_args.mode = "cumulative";
  auto* importance = app.add_subcommand("importance", "Gini importance ranking and top-k retrain");
  add_dataset_flags(importance, imp_args);
  importance->add_option("--mode", imp_args.mode, "feature mode")
      ->check(CLI::IsMember({"basic", "cumulative", "minmax", "zscore"}));
  add_cv_flags(importance, imp_args);
  add_output_flags(importance, imp_args);
  int imp_depth = 10;
  std::size_t top_k = 3;
  std::string imp_csv;
  importance->add_option("--depth", imp_depth, "tree depth for the ranking model")
      ->check(CLI::Range(1, 64));
  importance->add_option("--top-k", top_k, "number of features to keep")
      ->check(CLI::Range(std::size_t{1}, crfdspam::kFeatureCount));
  importance->add_option("--csv", imp_csv, "plot-ready feature,importance CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (synth->parsed())
      return run_synth(synth_out, reviewers, fake_ratio, zipf_exponent, synth_seed, reviews_min,
                       reviews_max, businesses);
    if (extract->parsed()) return run_extract(extract_args, corr_path, tables_path);
    if (evaluate->parsed()) return run_evaluate(eval_args);
    if (compare->parsed()) return run_compare(compare_args);
    if (importance->parsed()) return run_importance(imp_args, imp_depth, top_k, imp_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

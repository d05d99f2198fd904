// Python bindings for the core pipeline: synthesis/ingestion, feature
// extraction, CRFD transforms, classifiers, cross-validation, importance.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "crfdspam/classifiers.hpp"
#include "crfdspam/evaluate.hpp"
#include "crfdspam/features.hpp"
#include "crfdspam/importance.hpp"
#include "crfdspam/ingest.hpp"
#include "crfdspam/metrics.hpp"
#include "crfdspam/report.hpp"
#include "crfdspam/synth.hpp"
#include "crfdspam/transform.hpp"

namespace py = pybind11;
using namespace crfdspam;

namespace {

std::vector<ClassifierSpec> specs_from_strings(const std::vector<std::string>& names) {
  if (names.empty()) return default_specs();
  std::vector<ClassifierSpec> specs;
  specs.reserve(names.size());
  for (const std::string& name : names) specs.push_back(ClassifierSpec::parse(name));
  return specs;
}

CvOptions make_options(const std::string& mode, const std::string& crfd_scope, int folds,
                       std::uint64_t seed, bool group_by_reviewer,
                       std::optional<double> reference_date, double threshold, int threads) {
  CvOptions opt;
  opt.mode = feature_mode_from_string(mode);
  opt.scope = crfd_scope_from_string(crfd_scope);
  opt.folds = folds;
  opt.seed = seed;
  opt.group_by_reviewer = group_by_reviewer;
  opt.reference_date = reference_date;
  opt.threshold = threshold;
  opt.threads = threads;
  return opt;
}

py::dict metrics_dict(const MetricsRecord& r) {
  py::dict d;
  d["train_accuracy"] = r.train_accuracy;
  d["test_accuracy"] = r.test_accuracy;
  d["precision_0"] = r.precision_0;
  d["recall_0"] = r.recall_0;
  d["f1_0"] = r.f1_0;
  d["precision_1"] = r.precision_1;
  d["recall_1"] = r.recall_1;
  d["f1_1"] = r.f1_1;
  d["mcc"] = r.mcc;
  d["auc"] = r.auc;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Opinion spam detection with cumulative relative frequency features";

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("n_reviews", [](const Dataset& d) { return d.reviews.size(); })
      .def_property_readonly("n_reviewers", [](const Dataset& d) { return d.profiles.size(); })
      .def_property_readonly("n_businesses",
                             [](const Dataset& d) { return d.businesses.size(); })
      .def("validate",
           [](const Dataset& d) {
             std::vector<std::tuple<std::string, std::string, std::string>> out;
             for (const Violation& v : validate_dataset(d))
               out.emplace_back(v.instance_id, v.rule, v.detail);
             return out;
           })
      .def("write_csv",
           [](const Dataset& d, const std::string& reviews_path,
              const std::string& profiles_path) {
             write_reviews_csv(d, reviews_path);
             write_profiles_csv(d, profiles_path);
           },
           py::arg("reviews_path"), py::arg("profiles_path"))
      .def("__eq__", [](const Dataset& a, const Dataset& b) { return a == b; })
      .def("__repr__", [](const Dataset& d) {
        return "<Dataset reviews=" + std::to_string(d.reviews.size()) +
               " reviewers=" + std::to_string(d.profiles.size()) +
               " businesses=" + std::to_string(d.businesses.size()) + ">";
      });

  py::class_<LabeledMatrix>(m, "LabeledMatrix")
      .def_readonly("instance_ids", &LabeledMatrix::instance_ids)
      .def_readonly("feature_names", &LabeledMatrix::feature_names)
      .def_readonly("labels", &LabeledMatrix::labels)
      .def_property_readonly("rows", &LabeledMatrix::rows)
      .def_property_readonly("width", &LabeledMatrix::width)
      .def("row",
           [](const LabeledMatrix& m_, std::size_t i) {
             const auto row = m_.row(i);
             return std::vector<double>(row.begin(), row.end());
           },
           py::arg("i"))
      .def("to_rows",
           [](const LabeledMatrix& m_) {
             std::vector<std::vector<double>> rows;
             rows.reserve(m_.rows());
             for (std::size_t i = 0; i < m_.rows(); ++i) {
               const auto row = m_.row(i);
               rows.emplace_back(row.begin(), row.end());
             }
             return rows;
           })
      .def("select_columns",
           [](const LabeledMatrix& m_, const std::vector<std::size_t>& columns) {
             return select_columns(m_, columns);
           },
           py::arg("columns"))
      .def("__eq__", [](const LabeledMatrix& a, const LabeledMatrix& b) { return a == b; })
      .def("__repr__", [](const LabeledMatrix& m_) {
        return "<LabeledMatrix " + std::to_string(m_.rows()) + "x" +
               std::to_string(m_.width()) + ">";
      });

  py::class_<FrequencyTable>(m, "FrequencyTable")
      .def_readonly("values", &FrequencyTable::values)
      .def_readonly("counts", &FrequencyTable::counts)
      .def_readonly("cum_rel_freq", &FrequencyTable::cum_rel_freq)
      .def_readonly("n_total", &FrequencyTable::n_total)
      .def("__call__", [](const FrequencyTable& t, double v) { return eval_crfd(t, v); },
           py::arg("v"))
      .def("to_json", [](const FrequencyTable& t) { return table_to_json(t); });

  py::class_<ColumnTransforms>(m, "ColumnTransforms")
      .def("apply", &ColumnTransforms::apply, py::arg("matrix"))
      .def("apply_value", &ColumnTransforms::apply_value, py::arg("column"), py::arg("value"))
      .def_property_readonly("mode",
                             [](const ColumnTransforms& t) { return to_string(t.mode()); });

  py::class_<ClassifierSpec>(m, "ClassifierSpec")
      .def_static("parse", &ClassifierSpec::parse, py::arg("text"))
      .def_property_readonly("label", &ClassifierSpec::label)
      .def("__repr__",
           [](const ClassifierSpec& s) { return "<ClassifierSpec " + s.label() + ">"; });

  py::class_<Model>(m, "Model")
      .def_property_readonly("algorithm",
                             [](const Model& model) { return model.spec.label(); })
      .def_property_readonly("n_features", [](const Model& model) { return model.n_features; })
      .def("to_json", [](const Model& model) { return model_to_json(model); });

  py::class_<EvaluationReport>(m, "EvaluationReport")
      .def_property_readonly("mode",
                             [](const EvaluationReport& r) { return to_string(r.mode); })
      .def_property_readonly("folds", [](const EvaluationReport& r) { return r.folds; })
      .def_property_readonly("n_instances",
                             [](const EvaluationReport& r) { return r.n_instances; })
      .def("summary",
           [](const EvaluationReport& r) {
             py::list out;
             for (const SpecOutcome& o : r.results) {
               py::dict entry;
               entry["algorithm"] = o.spec.label();
               entry["ok"] = o.ok;
               if (o.ok)
                 entry["mean"] = metrics_dict(o.mean);
               else
                 entry["error"] = o.error;
               out.append(entry);
             }
             return out;
           })
      .def("to_json", [](const EvaluationReport& r) { return report_to_json(r).dump(2); })
      .def("to_markdown", [](const EvaluationReport& r) { return report_to_markdown(r); });

  // dataset pipeline -------------------------------------------------------
  m.def(
      "load_dataset",
      [](const std::string& reviews_path, const std::string& profiles_path) {
        std::vector<std::string> warnings;
        Dataset d = load_dataset(reviews_path, profiles_path, &warnings);
        return py::make_tuple(std::move(d), warnings);
      },
      py::arg("reviews_path"), py::arg("profiles_path"),
      "Parse the two-file form; returns (dataset, warnings).");
  m.def(
      "tag_reviewers",
      [](const Dataset& d) {
        TagResult result = tag_reviewers(d);
        py::dict stats;
        stats["fake_reviewers"] = result.stats.fake_reviewers;
        stats["genuine_reviewers"] = result.stats.genuine_reviewers;
        stats["mix_reviewers"] = result.stats.mix_reviewers;
        stats["dropped_reviews"] = result.stats.dropped_reviews;
        stats["fake_fraction"] = result.stats.fake_fraction();
        stats["genuine_fraction"] = result.stats.genuine_fraction();
        stats["mix_fraction"] = result.stats.mix_fraction();
        return py::make_tuple(std::move(result.dataset), stats);
      },
      py::arg("dataset"), "Label profiles, dropping mix reviewers; returns (dataset, stats).");
  m.def("derive_business_stats", &derive_business_stats, py::arg("dataset"));
  m.def(
      "generate",
      [](std::size_t n_reviewers, std::size_t reviews_min, std::size_t reviews_max,
         double fake_ratio, double zipf_exponent, std::uint64_t seed, std::size_t n_businesses,
         double horizon_days) {
        SynthConfig config;
        config.n_reviewers = n_reviewers;
        config.reviews_per_reviewer = {reviews_min, reviews_max};
        config.fake_ratio = fake_ratio;
        config.zipf_exponent = zipf_exponent;
        config.seed = seed;
        config.n_businesses = n_businesses;
        config.horizon_days = horizon_days;
        return generate(config);
      },
      py::arg("n_reviewers") = 2000, py::arg("reviews_min") = 1, py::arg("reviews_max") = 30,
      py::arg("fake_ratio") = 0.13, py::arg("zipf_exponent") = 1.2, py::arg("seed") = 42,
      py::arg("n_businesses") = 0, py::arg("horizon_days") = 5000.0,
      "Seeded synthetic dataset with power-law count features.");
  m.def("summarize", [](const Dataset& d) {
    const FeatureMoments moments = summarize(d);
    py::dict out;
    for (std::size_t i = 0; i < kFeatureCount; ++i)
      out[kFeatureNames[i]] = py::make_tuple(moments.mean[i], moments.std_dev[i]);
    return out;
  });

  // features ----------------------------------------------------------------
  m.def(
      "build_matrix",
      [](const Dataset& d, std::optional<double> reference_date, bool group_by_reviewer) {
        MatrixOptions opt;
        opt.reference_date = reference_date;
        opt.group_by_reviewer = group_by_reviewer;
        return build_matrix(d, opt);
      },
      py::arg("dataset"), py::arg("reference_date") = std::nullopt,
      py::arg("group_by_reviewer") = false);
  m.def("feature_names", [] { return feature_name_list(); });

  // transforms ---------------------------------------------------------------
  m.def("fit_crfd", [](const std::vector<double>& column) { return fit_crfd(column); },
        py::arg("column"));
  m.def("eval_crfd", &eval_crfd, py::arg("table"), py::arg("v"));
  m.def(
      "transform_matrix",
      [](const LabeledMatrix& matrix, const std::vector<FrequencyTable>& tables) {
        return transform_matrix(matrix, tables);
      },
      py::arg("matrix"), py::arg("tables"));
  m.def(
      "fit_transforms",
      [](const std::string& mode, const LabeledMatrix& matrix) {
        return ColumnTransforms::fit(feature_mode_from_string(mode), matrix);
      },
      py::arg("mode"), py::arg("matrix"));
  m.def("preprocessing_ms", &preprocessing_ms, py::arg("matrix"), py::arg("repetitions") = 1);

  // classifiers ---------------------------------------------------------------
  m.def(
      "fit_model",
      [](const std::string& spec, const LabeledMatrix& matrix, std::uint64_t seed) {
        return fit_model(ClassifierSpec::parse(spec), matrix, seed);
      },
      py::arg("spec"), py::arg("matrix"), py::arg("seed") = 0);
  m.def("predict_scores", &predict_scores, py::arg("model"), py::arg("matrix"));
  m.def("predict_labels", &predict_labels, py::arg("model"), py::arg("matrix"),
        py::arg("threshold") = 0.5);
  m.def("default_algorithms", [] {
    std::vector<std::string> labels;
    for (const ClassifierSpec& s : default_specs()) labels.push_back(s.label());
    return labels;
  });

  // metrics --------------------------------------------------------------------
  m.def(
      "confusion",
      [](const std::vector<int>& y_true, const std::vector<int>& y_pred) {
        const Confusion c = confusion(y_true, y_pred);
        return py::make_tuple(c.tp, c.fp, c.fn, c.tn);
      },
      py::arg("y_true"), py::arg("y_pred"), "Returns (tp, fp, fn, tn) with fake=0 positive.");
  m.def(
      "prf",
      [](std::int64_t tp, std::int64_t fp, std::int64_t fn, std::int64_t tn) {
        const PerClassMetrics pcm = prf(Confusion{tp, fp, fn, tn});
        py::dict out;
        out["precision_0"] = pcm.fake.precision;
        out["recall_0"] = pcm.fake.recall;
        out["f1_0"] = pcm.fake.f1;
        out["precision_1"] = pcm.genuine.precision;
        out["recall_1"] = pcm.genuine.recall;
        out["f1_1"] = pcm.genuine.f1;
        return out;
      },
      py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"));
  m.def(
      "mcc",
      [](std::int64_t tp, std::int64_t fp, std::int64_t fn, std::int64_t tn) {
        return mcc(Confusion{tp, fp, fn, tn});
      },
      py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"));
  m.def(
      "auc",
      [](const std::vector<int>& y_true, const std::vector<double>& scores) {
        return auc(y_true, scores);
      },
      py::arg("y_true"), py::arg("scores"));
  m.def("correlation_matrix", [](const LabeledMatrix& matrix) {
    const std::vector<double> corr = correlation_matrix(matrix);
    const std::size_t w = matrix.width();
    std::vector<std::vector<double>> nested(w, std::vector<double>(w));
    for (std::size_t a = 0; a < w; ++a)
      for (std::size_t b = 0; b < w; ++b) nested[a][b] = corr[a * w + b];
    return nested;
  });

  // evaluation -----------------------------------------------------------------
  m.def(
      "stratified_folds",
      [](const std::vector<int>& labels, int k, std::uint64_t seed) {
        return stratified_folds(labels, k, seed).fold_of;
      },
      py::arg("labels"), py::arg("k"), py::arg("seed"));
  m.def(
      "cross_validate",
      [](const Dataset& d, const std::vector<std::string>& algorithms, const std::string& mode,
         const std::string& crfd_scope, int folds, std::uint64_t seed, bool group_by_reviewer,
         std::optional<double> reference_date, double threshold, int threads) {
        return cross_validate(d, specs_from_strings(algorithms),
                              make_options(mode, crfd_scope, folds, seed, group_by_reviewer,
                                           reference_date, threshold, threads));
      },
      py::arg("dataset"), py::arg("algorithms") = std::vector<std::string>{},
      py::arg("mode") = "basic", py::arg("crfd_scope") = "train_only", py::arg("folds") = 5,
      py::arg("seed") = 42, py::arg("group_by_reviewer") = false,
      py::arg("reference_date") = std::nullopt, py::arg("threshold") = 0.5,
      py::arg("threads") = 0);
  m.def(
      "cross_validate_matrix",
      [](const LabeledMatrix& matrix, const std::vector<std::string>& algorithms,
         const std::string& mode, const std::string& crfd_scope, int folds, std::uint64_t seed,
         double threshold, int threads) {
        return cross_validate_matrix(matrix, specs_from_strings(algorithms),
                                     make_options(mode, crfd_scope, folds, seed, false,
                                                  std::nullopt, threshold, threads));
      },
      py::arg("matrix"), py::arg("algorithms") = std::vector<std::string>{},
      py::arg("mode") = "basic", py::arg("crfd_scope") = "train_only", py::arg("folds") = 5,
      py::arg("seed") = 42, py::arg("threshold") = 0.5, py::arg("threads") = 0);
  m.def(
      "compare_feature_sets",
      [](const EvaluationReport& basic, const EvaluationReport& cumulative) {
        py::list out;
        for (const ImprovementRow& row : compare_feature_sets(basic, cumulative)) {
          py::dict entry;
          entry["algorithm"] = row.algorithm;
          entry["ok"] = row.ok;
          if (row.ok) {
            entry["mcc_basic"] = row.mcc_basic;
            entry["mcc_cumulative"] = row.mcc_cumulative;
            entry["mcc_improvement_pct"] = row.mcc_improvement_pct;
            entry["auc_basic"] = row.auc_basic;
            entry["auc_cumulative"] = row.auc_cumulative;
            entry["auc_improvement_pct"] = row.auc_improvement_pct;
          } else {
            entry["error"] = row.error;
          }
          out.append(entry);
        }
        return out;
      },
      py::arg("basic"), py::arg("cumulative"));

  // importance -----------------------------------------------------------------
  m.def(
      "gini_importance",
      [](const Model& model) {
        const GiniImportance imp = gini_importance(model);
        return py::make_tuple(imp.values, imp.no_split);
      },
      py::arg("model"), "Returns (values, no_split).");
  m.def(
      "averaged_importance",
      [](const std::vector<Model>& models, const std::vector<std::string>& feature_names) {
        std::vector<std::pair<std::string, double>> out;
        for (const RankedFeature& r : averaged_importance(models, feature_names))
          out.emplace_back(r.feature, r.importance);
        return out;
      },
      py::arg("models"), py::arg("feature_names"));
  m.def(
      "select_top_k",
      [](const std::vector<std::pair<std::string, double>>& ranking, std::size_t k,
         const LabeledMatrix& matrix) {
        std::vector<RankedFeature> ranked;
        for (const auto& [feature, importance] : ranking)
          ranked.push_back({feature, importance});
        TopKSelection sel = select_top_k(ranked, k, matrix);
        return py::make_tuple(sel.features, std::move(sel.matrix));
      },
      py::arg("ranking"), py::arg("k"), py::arg("matrix"));

  m.attr("__version__") = "0.1.0";
}

#include "crfdspam/report.hpp"

#include <cmath>
#include <cstdio>

namespace crfdspam {

namespace {

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

nlohmann::ordered_json json_number(double v) {
  // JSON has no inf; improvement over a zero baseline serializes as null.
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::ordered_json metrics_to_json(const MetricsRecord& r) {
  nlohmann::ordered_json j;
  j["train_accuracy"] = r.train_accuracy;
  j["test_accuracy"] = r.test_accuracy;
  j["precision_0"] = r.precision_0;
  j["recall_0"] = r.recall_0;
  j["f1_0"] = r.f1_0;
  j["precision_1"] = r.precision_1;
  j["recall_1"] = r.recall_1;
  j["f1_1"] = r.f1_1;
  j["mcc"] = r.mcc;
  j["auc"] = r.auc;
  return j;
}

nlohmann::ordered_json report_to_json(const EvaluationReport& report) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(report.mode);
  j["crfd_scope"] = to_string(report.scope);
  if (report.mode != FeatureMode::basic && report.scope == CrfdScope::full_dataset)
    j["protocol_note"] = "paper-faithful (leaky) protocol: transforms fitted on the full "
                         "dataset before cross-validation";
  j["folds"] = report.folds;
  j["seed"] = report.seed;
  j["n_instances"] = report.n_instances;
  j["class_counts"] = {{"fake", report.n_fake}, {"non_fake", report.n_non_fake}};
  nlohmann::ordered_json algos = nlohmann::ordered_json::array();
  for (const SpecOutcome& outcome : report.results) {
    nlohmann::ordered_json entry;
    entry["algorithm"] = outcome.spec.label();
    entry["ok"] = outcome.ok;
    if (!outcome.ok) {
      entry["error"] = outcome.error;
    } else {
      entry["mean"] = metrics_to_json(outcome.mean);
      nlohmann::ordered_json folds = nlohmann::ordered_json::array();
      for (const MetricsRecord& r : outcome.fold_metrics) folds.push_back(metrics_to_json(r));
      entry["folds"] = std::move(folds);
    }
    algos.push_back(std::move(entry));
  }
  j["algorithms"] = std::move(algos);
  return j;
}

nlohmann::ordered_json improvement_to_json(std::span<const ImprovementRow> rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ImprovementRow& row : rows) {
    nlohmann::ordered_json entry;
    entry["algorithm"] = row.algorithm;
    entry["ok"] = row.ok;
    if (!row.ok) {
      entry["error"] = row.error;
    } else {
      entry["mcc_basic"] = row.mcc_basic;
      entry["mcc_cumulative"] = row.mcc_cumulative;
      entry["mcc_improvement_pct"] = json_number(row.mcc_improvement_pct);
      entry["auc_basic"] = row.auc_basic;
      entry["auc_cumulative"] = row.auc_cumulative;
      entry["auc_improvement_pct"] = json_number(row.auc_improvement_pct);
    }
    arr.push_back(std::move(entry));
  }
  return arr;
}

nlohmann::ordered_json importance_to_json(std::span<const RankedFeature> ranking) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const RankedFeature& r : ranking)
    arr.push_back({{"feature", r.feature}, {"importance", r.importance}});
  return arr;
}

std::string report_to_markdown(const EvaluationReport& report) {
  std::string out;
  out += "| Algorithm | TraAcc | TstAcc | Prec-0 | Rec-0 | F1-0 | Prec-1 | Rec-1 | F1-1 | MCC | AUC |\n";
  out += "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const SpecOutcome& o : report.results) {
    if (!o.ok) {
      out += "| " + o.spec.label() + " | error: " + o.error + " | | | | | | | | | |\n";
      continue;
    }
    const MetricsRecord& r = o.mean;
    out += "| " + o.spec.label() + " | " + fixed(r.train_accuracy, 2) + " | " +
           fixed(r.test_accuracy, 2) + " | " + fixed(r.precision_0, 2) + " | " +
           fixed(r.recall_0, 2) + " | " + fixed(r.f1_0, 2) + " | " + fixed(r.precision_1, 2) +
           " | " + fixed(r.recall_1, 2) + " | " + fixed(r.f1_1, 2) + " | " + fixed(r.mcc, 2) +
           " | " + fixed(r.auc, 2) + " |\n";
  }
  return out;
}

std::string improvement_to_markdown(std::span<const ImprovementRow> rows) {
  std::string out;
  out += "| Algorithm | MCC basic | MCC cumulative | MCC improv. (%) | AUC basic | AUC cumulative | AUC improv. (%) |\n";
  out += "|---|---|---|---|---|---|---|\n";
  for (const ImprovementRow& row : rows) {
    if (!row.ok) {
      out += "| " + row.algorithm + " | error: " + row.error + " | | | | | |\n";
      continue;
    }
    out += "| " + row.algorithm + " | " + fixed(row.mcc_basic, 2) + " | " +
           fixed(row.mcc_cumulative, 2) + " | " + fixed(row.mcc_improvement_pct, 1) + " | " +
           fixed(row.auc_basic, 2) + " | " + fixed(row.auc_cumulative, 2) + " | " +
           fixed(row.auc_improvement_pct, 1) + " |\n";
  }
  return out;
}

std::string importance_to_markdown(std::span<const RankedFeature> ranking) {
  std::string out;
  out += "| Feature | Mean Gini importance |\n|---|---|\n";
  for (const RankedFeature& r : ranking)
    out += "| " + r.feature + " | " + fixed(r.importance, 4) + " |\n";
  return out;
}

std::string importance_to_csv(std::span<const RankedFeature> ranking) {
  std::string out = "feature,importance\n";
  for (const RankedFeature& r : ranking) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", r.importance);
    out += r.feature;
    out += ',';
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace crfdspam

#include "crfdspam/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "crfdspam/features.hpp"
#include "crfdspam/metrics.hpp"
#include "crfdspam/rng.hpp"

namespace crfdspam {

std::vector<std::size_t> FoldAssignment::fold_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    if (fold_of[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldAssignment::complement_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    if (fold_of[i] != fold) out.push_back(i);
  return out;
}

FoldAssignment stratified_folds(std::span<const int> labels, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("stratified_folds: k must be >= 2");
  std::vector<std::size_t> class0, class1;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0)
      class0.push_back(i);
    else if (labels[i] == 1)
      class1.push_back(i);
    else
      throw std::invalid_argument("stratified_folds: labels must be 0 or 1");
  }
  for (const auto* cls : {&class0, &class1})
    if (cls->size() < static_cast<std::size_t>(k))
      throw std::invalid_argument("stratified_folds: a class has fewer than k members (" +
                                  std::to_string(cls->size()) + " < " + std::to_string(k) + ")");

  FoldAssignment fa;
  fa.k = k;
  fa.fold_of.assign(labels.size(), 0);
  Rng rng(seed);
  for (auto* cls : {&class0, &class1}) {
    rng.shuffle(*cls);
    for (std::size_t i = 0; i < cls->size(); ++i)
      fa.fold_of[(*cls)[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
  }
  return fa;
}

MetricsRecord mean_record(std::span<const MetricsRecord> records) {
  MetricsRecord mean;
  if (records.empty()) return mean;
  for (const MetricsRecord& r : records) {
    mean.train_accuracy += r.train_accuracy;
    mean.test_accuracy += r.test_accuracy;
    mean.precision_0 += r.precision_0;
    mean.recall_0 += r.recall_0;
    mean.f1_0 += r.f1_0;
    mean.precision_1 += r.precision_1;
    mean.recall_1 += r.recall_1;
    mean.f1_1 += r.f1_1;
    mean.mcc += r.mcc;
    mean.auc += r.auc;
  }
  const double n = static_cast<double>(records.size());
  mean.train_accuracy /= n;
  mean.test_accuracy /= n;
  mean.precision_0 /= n;
  mean.recall_0 /= n;
  mean.f1_0 /= n;
  mean.precision_1 /= n;
  mean.recall_1 /= n;
  mean.f1_1 /= n;
  mean.mcc /= n;
  mean.auc /= n;
  return mean;
}

const char* to_string(CrfdScope scope) {
  return scope == CrfdScope::train_only ? "train_only" : "full_dataset";
}

CrfdScope crfd_scope_from_string(const std::string& s) {
  if (s == "train_only") return CrfdScope::train_only;
  if (s == "full_dataset") return CrfdScope::full_dataset;
  throw std::invalid_argument("unknown crfd scope: " + s);
}

int resolve_threads(std::size_t n_tasks, int requested) {
  if (n_tasks <= 1) return 1;
  int threads = requested > 0 ? requested
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* env = std::getenv("CRFD_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  return std::min<int>(threads, static_cast<int>(n_tasks));
}

namespace {

MetricsRecord fold_metrics(const Model& model, const LabeledMatrix& train,
                           const LabeledMatrix& val, double threshold) {
  MetricsRecord rec;
  const std::vector<int> train_pred = predict_labels(model, train, threshold);
  rec.train_accuracy = accuracy(confusion(train.labels, train_pred));

  const std::vector<double> scores = predict_scores(model, val);
  std::vector<int> val_pred(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) val_pred[i] = scores[i] >= threshold ? 1 : 0;
  const Confusion c = confusion(val.labels, val_pred);
  rec.test_accuracy = accuracy(c);
  const PerClassMetrics pcm = prf(c);
  rec.precision_0 = pcm.fake.precision;
  rec.recall_0 = pcm.fake.recall;
  rec.f1_0 = pcm.fake.f1;
  rec.precision_1 = pcm.genuine.precision;
  rec.recall_1 = pcm.genuine.recall;
  rec.f1_1 = pcm.genuine.f1;
  rec.mcc = mcc(c);
  rec.auc = auc(val.labels, scores);
  return rec;
}

// Runs worker(i) for i in [0, n) on up to resolve_threads(n, requested)
// threads. Each task writes only its own output slot, so results are
// independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int requested_threads, Fn&& worker) {
  const int threads = resolve_threads(n, requested_threads);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) worker(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  std::atomic<std::size_t> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        worker(i);
      }
    });
  for (std::thread& t : pool) t.join();
}

}  // namespace

std::vector<FoldMatrices> prepare_folds(const LabeledMatrix& m, const FoldAssignment& folds,
                                        FeatureMode mode, CrfdScope scope) {
  std::vector<FoldMatrices> out(static_cast<std::size_t>(folds.k));
  if (mode == FeatureMode::basic || scope == CrfdScope::full_dataset) {
    LabeledMatrix full = m;
    if (mode != FeatureMode::basic) {
      const ColumnTransforms t = ColumnTransforms::fit(mode, m);
      full = t.apply(m);
    }
    for (int f = 0; f < folds.k; ++f) {
      out[static_cast<std::size_t>(f)].train = select_rows(full, folds.complement_indices(f));
      out[static_cast<std::size_t>(f)].validation = select_rows(full, folds.fold_indices(f));
    }
  } else {
    for (int f = 0; f < folds.k; ++f) {
      const LabeledMatrix train_raw = select_rows(m, folds.complement_indices(f));
      const LabeledMatrix val_raw = select_rows(m, folds.fold_indices(f));
      const ColumnTransforms t = ColumnTransforms::fit(mode, train_raw);
      out[static_cast<std::size_t>(f)].train = t.apply(train_raw);
      out[static_cast<std::size_t>(f)].validation = t.apply(val_raw);
    }
  }
  return out;
}

EvaluationReport cross_validate_matrix(const LabeledMatrix& m,
                                       std::span<const ClassifierSpec> specs,
                                       const CvOptions& options) {
  EvaluationReport report;
  report.mode = options.mode;
  report.scope = options.scope;
  report.folds = options.folds;
  report.seed = options.seed;
  report.n_instances = m.rows();
  for (int label : m.labels) label == 0 ? ++report.n_fake : ++report.n_non_fake;

  const FoldAssignment folds = stratified_folds(m.labels, options.folds, options.seed);

  // Transforms depend only on the fold split, never on the classifier, so
  // they are fitted once and shared across specs.
  std::vector<FoldMatrices> fold_sets;
  std::string transform_error;
  try {
    fold_sets = prepare_folds(m, folds, options.mode, options.scope);
  } catch (const std::exception& e) {
    transform_error = e.what();
  }

  report.results.resize(specs.size());
  parallel_for(specs.size(), options.threads, [&](std::size_t s) {
    SpecOutcome& outcome = report.results[s];
    outcome.spec = specs[s];
    if (!transform_error.empty()) {
      outcome.ok = false;
      outcome.error = "transform: " + transform_error;
      return;
    }
    try {
      for (int f = 0; f < options.folds; ++f) {
        const LabeledMatrix& train = fold_sets[static_cast<std::size_t>(f)].train;
        const LabeledMatrix& val = fold_sets[static_cast<std::size_t>(f)].validation;
        const Model model = fit_model(specs[s], train, options.seed);
        outcome.fold_metrics.push_back(fold_metrics(model, train, val, options.threshold));
      }
      outcome.mean = mean_record(outcome.fold_metrics);
      outcome.ok = true;
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.error = e.what();
      outcome.fold_metrics.clear();
    }
  });
  return report;
}

EvaluationReport cross_validate(const Dataset& d, std::span<const ClassifierSpec> specs,
                                const CvOptions& options) {
  MatrixOptions mo;
  mo.reference_date = options.reference_date;
  mo.group_by_reviewer = options.group_by_reviewer;
  return cross_validate_matrix(build_matrix(d, mo), specs, options);
}

double improvement_pct(double basic, double cumulative) {
  if (basic == 0.0 && cumulative == 0.0) return 0.0;
  if (basic == 0.0)
    return cumulative > 0.0 ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
  return (cumulative - basic) / basic * 100.0;
}

std::vector<ImprovementRow> compare_feature_sets(const EvaluationReport& basic,
                                                 const EvaluationReport& cumulative) {
  if (basic.folds != cumulative.folds)
    throw std::invalid_argument("compare_feature_sets: reports use different k");
  if (basic.results.size() != cumulative.results.size())
    throw std::invalid_argument("compare_feature_sets: algorithm lists differ in length");
  std::vector<ImprovementRow> rows;
  rows.reserve(basic.results.size());
  for (std::size_t i = 0; i < basic.results.size(); ++i) {
    const SpecOutcome& b = basic.results[i];
    const SpecOutcome& c = cumulative.results[i];
    if (b.spec.label() != c.spec.label())
      throw std::invalid_argument("compare_feature_sets: algorithm lists differ: " +
                                  b.spec.label() + " vs " + c.spec.label());
    ImprovementRow row;
    row.algorithm = b.spec.label();
    if (!b.ok || !c.ok) {
      row.ok = false;
      row.error = !b.ok ? b.error : c.error;
    } else {
      row.ok = true;
      row.mcc_basic = b.mean.mcc;
      row.mcc_cumulative = c.mean.mcc;
      row.mcc_improvement_pct = improvement_pct(b.mean.mcc, c.mean.mcc);
      row.auc_basic = b.mean.auc;
      row.auc_cumulative = c.mean.auc;
      row.auc_improvement_pct = improvement_pct(b.mean.auc, c.mean.auc);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace crfdspam

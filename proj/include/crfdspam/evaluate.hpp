#ifndef CRFDSPAM_EVALUATE_HPP_
#define CRFDSPAM_EVALUATE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crfdspam/classifiers.hpp"
#include "crfdspam/transform.hpp"
#include "crfdspam/types.hpp"

// Stratified cross-validation harness, per-fold metric records, and the
// basic-vs-cumulative comparison. Folds and classifier specs are independent
// work units; specs are evaluated concurrently up to the CRFD_THREADS cap,
// and report assembly is order-deterministic regardless of thread count.

namespace crfdspam {

struct FoldAssignment {
  int k = 0;
  std::vector<int> fold_of;  // fold index in [0,k) per instance

  std::vector<std::size_t> fold_indices(int fold) const;
  std::vector<std::size_t> complement_indices(int fold) const;
};

// Within each class: seeded shuffle, then round-robin over folds, so every
// fold's class count is within one instance of perfect proportionality.
// Throws if any class has fewer than k members.
FoldAssignment stratified_folds(std::span<const int> labels, int k, std::uint64_t seed);

struct MetricsRecord {
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double precision_0 = 0.0;
  double recall_0 = 0.0;
  double f1_0 = 0.0;
  double precision_1 = 0.0;
  double recall_1 = 0.0;
  double f1_1 = 0.0;
  double mcc = 0.0;
  double auc = 0.0;
};

MetricsRecord mean_record(std::span<const MetricsRecord> records);

enum class CrfdScope {
  train_only,    // leakage-free: transforms fitted per training fold
  full_dataset,  // paper-faithful: fitted once on everything before CV
};

const char* to_string(CrfdScope scope);
CrfdScope crfd_scope_from_string(const std::string& s);

struct CvOptions {
  FeatureMode mode = FeatureMode::basic;
  CrfdScope scope = CrfdScope::train_only;
  int folds = 5;
  std::uint64_t seed = 42;
  bool group_by_reviewer = false;
  std::optional<double> reference_date;
  double threshold = 0.5;
  int threads = 0;  // 0 = automatic, capped by the CRFD_THREADS env var
};

struct SpecOutcome {
  ClassifierSpec spec;
  bool ok = false;
  std::string error;  // set when !ok
  std::vector<MetricsRecord> fold_metrics;
  MetricsRecord mean;
};

struct EvaluationReport {
  FeatureMode mode = FeatureMode::basic;
  CrfdScope scope = CrfdScope::train_only;
  int folds = 0;
  std::uint64_t seed = 0;
  std::size_t n_instances = 0;
  std::size_t n_fake = 0;
  std::size_t n_non_fake = 0;
  std::vector<SpecOutcome> results;
};

struct FoldMatrices {
  LabeledMatrix train;
  LabeledMatrix validation;
};

// The per-fold (train, validation) matrices with the mode's transform
// applied under the given scope: full_dataset fits once on everything
// (paper-faithful, leaks the validation distribution), train_only refits on
// each fold's training rows.
std::vector<FoldMatrices> prepare_folds(const LabeledMatrix& m, const FoldAssignment& folds,
                                        FeatureMode mode, CrfdScope scope);

// Per spec: fit on k-1 folds, evaluate on the held-out fold, average
// arithmetically over folds. A failing spec yields an error entry without
// aborting the rest.
EvaluationReport cross_validate_matrix(const LabeledMatrix& m,
                                       std::span<const ClassifierSpec> specs,
                                       const CvOptions& options);

// Convenience overload: builds the matrix from a tagged dataset first.
EvaluationReport cross_validate(const Dataset& d, std::span<const ClassifierSpec> specs,
                                const CvOptions& options);

struct ImprovementRow {
  std::string algorithm;
  bool ok = false;
  std::string error;
  double mcc_basic = 0.0;
  double mcc_cumulative = 0.0;
  double mcc_improvement_pct = 0.0;
  double auc_basic = 0.0;
  double auc_cumulative = 0.0;
  double auc_improvement_pct = 0.0;
};

// (cumulative - basic) / basic * 100; 0 when both are 0, +/-inf when only the
// baseline is 0.
double improvement_pct(double basic, double cumulative);

// Throws unless both reports cover the same algorithms with the same k.
std::vector<ImprovementRow> compare_feature_sets(const EvaluationReport& basic,
                                                 const EvaluationReport& cumulative);

// Worker count for n independent tasks, honoring CRFD_THREADS.
int resolve_threads(std::size_t n_tasks, int requested = 0);

}  // namespace crfdspam

#endif  // CRFDSPAM_EVALUATE_HPP_

#ifndef CRFDSPAM_METRICS_HPP_
#define CRFDSPAM_METRICS_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "crfdspam/types.hpp"

// Binary-classification metrics with fake = 0 as the positive class.

namespace crfdspam {

struct Confusion {
  std::int64_t tp = 0;  // true 0, predicted 0
  std::int64_t fp = 0;  // true 1, predicted 0
  std::int64_t fn = 0;  // true 0, predicted 1
  std::int64_t tn = 0;  // true 1, predicted 1

  std::int64_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

// Throws on length mismatch or labels outside {0,1}.
Confusion confusion(std::span<const int> y_true, std::span<const int> y_pred);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct PerClassMetrics {
  ClassMetrics fake;      // class 0
  ClassMetrics genuine;   // class 1
};

// Standard per-class precision/recall/F1 with the 0/0 convention of 0.
PerClassMetrics prf(const Confusion& c);

double accuracy(const Confusion& c);

// Matthews correlation coefficient; 0 whenever a denominator factor is 0.
double mcc(const Confusion& c);

// Probability that a random class-1 instance scores above a random class-0
// instance, ties counted 1/2 (rank / Mann-Whitney form). Throws unless both
// classes are present.
double auc(std::span<const int> y_true, std::span<const double> scores);

// Pearson correlation of every column pair, row-major width x width, unit
// diagonal. Throws on a constant column, naming it.
std::vector<double> correlation_matrix(const LabeledMatrix& m);

void write_correlation_csv(const LabeledMatrix& m, const std::vector<double>& corr,
                           const std::filesystem::path& path);

}  // namespace crfdspam

#endif  // CRFDSPAM_METRICS_HPP_

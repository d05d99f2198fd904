#ifndef CRFDSPAM_TRANSFORM_HPP_
#define CRFDSPAM_TRANSFORM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crfdspam/types.hpp"

// Cumulative relative frequency distribution (CRFD) fitting and value
// substitution, plus the min-max and z-score baselines it is compared
// against. Fitted objects are immutable; evaluation and matrix transforms are
// pure and safe to call concurrently.

namespace crfdspam {

// Frequency table over the distinct values of one feature column. Counts are
// kept exact; cum_rel_freq[k] is the prefix count divided by n_total, i.e.
// the fraction of the fitting column <= values[k].
struct FrequencyTable {
  std::vector<double> values;        // strictly increasing
  std::vector<std::int64_t> counts;  // positive, one per value
  std::vector<double> cum_rel_freq;  // non-decreasing, last == 1.0
  std::int64_t n_total = 0;

  friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;
};

// Fits the table over the distinct values of the column. Throws on an empty
// column or any non-finite entry.
FrequencyTable fit_crfd(std::span<const double> column);

// Right-continuous step evaluation: the cumulative relative frequency of the
// largest observed value <= v, or 0 below the observed minimum. Equals
// |{x in fitting column : x <= v}| / n exactly.
double eval_crfd(const FrequencyTable& t, double v);

// Replaces every cell by eval_crfd under its column's table; instance ids,
// labels, ordering and column names are untouched. Requires one table per
// column.
LabeledMatrix transform_matrix(const LabeledMatrix& m,
                               std::span<const FrequencyTable> tables);

// JSON round-trip for reproducible transform reuse (values, counts, n_total;
// cumulative frequencies are recomputed on load).
std::string table_to_json(const FrequencyTable& t);
FrequencyTable table_from_json(const std::string& text);
std::string tables_to_json(std::span<const FrequencyTable> tables,
                           std::span<const std::string> feature_names);

// Affine [0,1] rescaling baseline. Out-of-range inputs clamp to [0,1].
struct MinMaxScale {
  double min = 0.0;
  double max = 0.0;
  double operator()(double v) const;
};

// Throws "zero range" on a constant column.
MinMaxScale fit_minmax(std::span<const double> column);

// Standardization baseline with population standard deviation.
struct ZScore {
  double mean = 0.0;
  double std = 0.0;
  double operator()(double v) const { return (v - mean) / std; }
};

// Throws on zero standard deviation.
ZScore fit_zscore(std::span<const double> column);

enum class FeatureMode { basic, cumulative, minmax, zscore };

const char* to_string(FeatureMode mode);
FeatureMode feature_mode_from_string(const std::string& s);

// Per-column scalers fitted for one feature mode. basic is the identity.
class ColumnTransforms {
 public:
  static ColumnTransforms fit(FeatureMode mode, const LabeledMatrix& m);

  FeatureMode mode() const { return mode_; }
  double apply_value(std::size_t column, double v) const;
  LabeledMatrix apply(const LabeledMatrix& m) const;
  const std::vector<FrequencyTable>& tables() const { return tables_; }

 private:
  FeatureMode mode_ = FeatureMode::basic;
  std::vector<FrequencyTable> tables_;
  std::vector<MinMaxScale> minmax_;
  std::vector<ZScore> zscore_;
};

// Wall-clock milliseconds to fit a CRFD table per column and transform the
// matrix once; with repetitions > 1, the total across that many passes.
double preprocessing_ms(const LabeledMatrix& m, int repetitions = 1);

}  // namespace crfdspam

#endif  // CRFDSPAM_TRANSFORM_HPP_

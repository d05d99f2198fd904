#ifndef CRFDSPAM_IMPORTANCE_HPP_
#define CRFDSPAM_IMPORTANCE_HPP_

#include <span>
#include <string>
#include <vector>

#include "crfdspam/classifiers.hpp"
#include "crfdspam/types.hpp"

// Gini importance (mean decrease in impurity) for fitted cart trees, per-fold
// averaging, and top-k feature selection. Pure functions over immutable
// models.

namespace crfdspam {

struct GiniImportance {
  std::vector<double> values;  // one per feature; non-negative, sums to 1
  bool no_split = false;       // all-leaf tree: values are uniform zeros
};

// importance[f] = sum over internal nodes splitting on f of
//   (node samples / root samples) * (node impurity - weighted child impurity),
// normalized to sum 1. Throws unless the model is a cart tree.
GiniImportance gini_importance(const Model& model);

struct RankedFeature {
  std::string feature;
  double importance = 0.0;
};

// Arithmetic mean per feature across fold models, sorted descending, ties
// broken by feature name.
std::vector<RankedFeature> averaged_importance(std::span<const Model> fold_models,
                                               std::span<const std::string> feature_names);

struct TopKSelection {
  std::vector<std::string> features;        // in ranking order
  std::vector<std::size_t> column_indices;  // into the source matrix
  LabeledMatrix matrix;                     // restricted to those columns
};

// Restricts the matrix to the k best-ranked features. Throws on k outside
// [1, width].
TopKSelection select_top_k(std::span<const RankedFeature> ranking, std::size_t k,
                           const LabeledMatrix& m);

}  // namespace crfdspam

#endif  // CRFDSPAM_IMPORTANCE_HPP_

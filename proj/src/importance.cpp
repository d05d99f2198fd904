#include "crfdspam/importance.hpp"

#include <algorithm>
#include <stdexcept>

namespace crfdspam {

GiniImportance gini_importance(const Model& model) {
  const TreeModel& tree = model.tree();
  if (tree.nodes.empty()) throw std::invalid_argument("gini_importance: empty tree");

  GiniImportance out;
  out.values.assign(model.n_features, 0.0);
  const double root_samples = static_cast<double>(tree.nodes[0].n_samples);
  double total = 0.0;
  for (const TreeNode& node : tree.nodes) {
    if (node.is_leaf()) continue;
    const TreeNode& left = tree.nodes[static_cast<std::size_t>(node.left)];
    const TreeNode& right = tree.nodes[static_cast<std::size_t>(node.right)];
    const double n = static_cast<double>(node.n_samples);
    const double weighted_children =
        (static_cast<double>(left.n_samples) * left.impurity +
         static_cast<double>(right.n_samples) * right.impurity) /
        n;
    // Split selection guarantees a positive decrease; the max only absorbs
    // floating-point rounding of the recomputation.
    const double decrease = std::max(0.0, node.impurity - weighted_children);
    const double contribution = n / root_samples * decrease;
    out.values[static_cast<std::size_t>(node.feature)] += contribution;
    total += contribution;
  }
  if (total == 0.0) {
    out.no_split = true;
    return out;
  }
  for (double& v : out.values) v /= total;
  return out;
}

std::vector<RankedFeature> averaged_importance(std::span<const Model> fold_models,
                                               std::span<const std::string> feature_names) {
  if (fold_models.empty())
    throw std::invalid_argument("averaged_importance: need at least one model");
  std::vector<double> sum(feature_names.size(), 0.0);
  for (const Model& model : fold_models) {
    const GiniImportance imp = gini_importance(model);
    if (imp.values.size() != feature_names.size())
      throw std::invalid_argument("averaged_importance: model width does not match names");
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += imp.values[i];
  }
  std::vector<RankedFeature> ranked;
  ranked.reserve(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i)
    ranked.push_back({feature_names[i], sum[i] / static_cast<double>(fold_models.size())});
  std::sort(ranked.begin(), ranked.end(), [](const RankedFeature& a, const RankedFeature& b) {
    if (a.importance != b.importance) return a.importance > b.importance;
    return a.feature < b.feature;
  });
  return ranked;
}

TopKSelection select_top_k(std::span<const RankedFeature> ranking, std::size_t k,
                           const LabeledMatrix& m) {
  if (k < 1 || k > m.width())
    throw std::invalid_argument("select_top_k: k must be in [1, " + std::to_string(m.width()) +
                                "], got " + std::to_string(k));
  if (ranking.size() < k)
    throw std::invalid_argument("select_top_k: ranking shorter than k");
  TopKSelection sel;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string& name = ranking[i].feature;
    const auto it = std::find(m.feature_names.begin(), m.feature_names.end(), name);
    if (it == m.feature_names.end())
      throw std::invalid_argument("select_top_k: feature '" + name + "' not in matrix");
    sel.features.push_back(name);
    sel.column_indices.push_back(static_cast<std::size_t>(it - m.feature_names.begin()));
  }
  sel.matrix = select_columns(m, sel.column_indices);
  return sel;
}

}  // namespace crfdspam

#ifndef CRFDSPAM_CLASSIFIERS_HPP_
#define CRFDSPAM_CLASSIFIERS_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "crfdspam/types.hpp"

// From-scratch binary classifiers behind a uniform fit/score/predict
// contract. Scores are always the estimated probability of class 1
// (non-fake). Fitting is deterministic given (spec, matrix, seed); fitted
// models are immutable and safe to share across threads.

namespace crfdspam {

enum class Algorithm { log_reg, lda, gaussian_nb, cart, knn };

const char* to_string(Algorithm a);

struct ClassifierSpec {
  Algorithm algorithm = Algorithm::cart;

  // log_reg: full-batch gradient descent on the logistic loss.
  double learning_rate = 0.1;
  int max_iter = 5000;
  double tol = 1e-6;  // stop when the loss delta falls below this

  // lda: ridge added to the pooled covariance diagonal.
  double ridge = 1e-6;

  // gaussian_nb: lower bound on per-feature variances.
  double variance_floor = 1e-9;

  // cart
  int max_depth = 10;
  int min_samples_split = 2;

  // knn
  int k = 5;

  // Human-readable identifier used in reports, e.g. "cart(depth=10)".
  std::string label() const;

  // Throws on out-of-range hyperparameters.
  void validate() const;

  // Parses "algo" or "algo:key=value[:key=value...]", e.g. "cart:depth=10",
  // "knn:k=5", "log_reg:learning_rate=0.05".
  static ClassifierSpec parse(const std::string& text);

  friend bool operator==(const ClassifierSpec&, const ClassifierSpec&) = default;
};

// Default experiment batch: two tree depths, two k values, and the three
// remaining parametric models.
std::vector<ClassifierSpec> default_specs();

struct TreeNode {
  int feature = -1;        // -1 for leaves
  double threshold = 0.0;  // x[feature] <= threshold goes left
  double impurity = 0.0;   // Gini impurity of the node's training samples
  std::int64_t n_samples = 0;
  std::array<std::int64_t, 2> class_counts{0, 0};
  int left = -1;
  int right = -1;

  bool is_leaf() const { return feature < 0; }
  // Leaf class distribution: probability of class 1.
  double p1() const {
    return static_cast<double>(class_counts[1]) / static_cast<double>(n_samples);
  }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // preorder, root at 0
  int depth = 0;                // number of split levels actually used
  friend bool operator==(const TreeModel&, const TreeModel&) = default;
};

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> loss_trace;  // loss before training, then per accepted step
  int iterations = 0;
  bool converged = false;
  friend bool operator==(const LogRegModel&, const LogRegModel&) = default;
};

struct LdaModel {
  std::array<std::vector<double>, 2> class_means;
  std::vector<double> pooled_covariance;  // width x width, row-major, ridge included
  std::array<double, 2> priors{0.0, 0.0};
  // Derived affine discriminant: score = sigmoid(w.x + bias).
  std::vector<double> weights;
  double bias = 0.0;
  friend bool operator==(const LdaModel&, const LdaModel&) = default;
};

struct GaussianNbModel {
  std::array<std::vector<double>, 2> means;
  std::array<std::vector<double>, 2> variances;  // floored
  std::array<double, 2> priors{0.0, 0.0};
  friend bool operator==(const GaussianNbModel&, const GaussianNbModel&) = default;
};

struct KnnModel {
  int k = 5;
  std::vector<double> rows;  // training matrix, row-major
  std::vector<int> labels;
  friend bool operator==(const KnnModel&, const KnnModel&) = default;
};

struct Model {
  ClassifierSpec spec;
  std::size_t n_features = 0;
  std::variant<LogRegModel, LdaModel, GaussianNbModel, TreeModel, KnnModel> params;

  const TreeModel& tree() const;  // throws unless this is a cart model
  friend bool operator==(const Model&, const Model&) = default;
};

// Fits a model. knn and cart accept a single-class matrix (and then predict
// that class constantly); the parametric models require both classes.
Model fit_model(const ClassifierSpec& spec, const LabeledMatrix& m, std::uint64_t seed = 0);

// Estimated probability of class 1 per row. Throws on width mismatch.
std::vector<double> predict_scores(const Model& model, const LabeledMatrix& m);

// Label 1 iff score >= threshold (ties go to class 1).
std::vector<int> predict_labels(const Model& model, const LabeledMatrix& m,
                                double threshold = 0.5);

// Model parameters (and tree structure for cart) as a JSON document.
std::string model_to_json(const Model& model);

}  // namespace crfdspam

#endif  // CRFDSPAM_CLASSIFIERS_HPP_

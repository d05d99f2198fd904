#include "crfdspam/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace crfdspam {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::log_reg: return "log_reg";
    case Algorithm::lda: return "lda";
    case Algorithm::gaussian_nb: return "gaussian_nb";
    case Algorithm::cart: return "cart";
    case Algorithm::knn: return "knn";
  }
  return "cart";
}

std::string ClassifierSpec::label() const {
  switch (algorithm) {
    case Algorithm::cart: return "cart(depth=" + std::to_string(max_depth) + ")";
    case Algorithm::knn: return "knn(k=" + std::to_string(k) + ")";
    default: return to_string(algorithm);
  }
}

void ClassifierSpec::validate() const {
  if (learning_rate <= 0.0) throw std::invalid_argument("learning_rate must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (tol < 0.0) throw std::invalid_argument("tol must be >= 0");
  if (ridge < 0.0) throw std::invalid_argument("ridge must be >= 0");
  if (variance_floor <= 0.0) throw std::invalid_argument("variance_floor must be > 0");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (min_samples_split < 2) throw std::invalid_argument("min_samples_split must be >= 2");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
}

ClassifierSpec ClassifierSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (parts.empty() || parts[0].empty())
    throw std::invalid_argument("empty classifier spec");

  ClassifierSpec spec;
  const std::string& name = parts[0];
  if (name == "log_reg")
    spec.algorithm = Algorithm::log_reg;
  else if (name == "lda")
    spec.algorithm = Algorithm::lda;
  else if (name == "gaussian_nb")
    spec.algorithm = Algorithm::gaussian_nb;
  else if (name == "cart")
    spec.algorithm = Algorithm::cart;
  else if (name == "knn")
    spec.algorithm = Algorithm::knn;
  else
    throw std::invalid_argument("unknown algorithm '" + name + "'");

  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& kv = parts[i];
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key=value in classifier spec, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    try {
      if (key == "depth" || key == "max_depth")
        spec.max_depth = std::stoi(value);
      else if (key == "min_split" || key == "min_samples_split")
        spec.min_samples_split = std::stoi(value);
      else if (key == "k")
        spec.k = std::stoi(value);
      else if (key == "lr" || key == "learning_rate")
        spec.learning_rate = std::stod(value);
      else if (key == "max_iter")
        spec.max_iter = std::stoi(value);
      else if (key == "tol")
        spec.tol = std::stod(value);
      else if (key == "ridge")
        spec.ridge = std::stod(value);
      else if (key == "variance_floor" || key == "var_floor")
        spec.variance_floor = std::stod(value);
      else
        throw std::invalid_argument("unknown hyperparameter '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse value '" + value + "' for '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

std::vector<ClassifierSpec> default_specs() {
  std::vector<ClassifierSpec> specs;
  ClassifierSpec cart10;
  cart10.algorithm = Algorithm::cart;
  cart10.max_depth = 10;
  specs.push_back(cart10);
  ClassifierSpec cart5 = cart10;
  cart5.max_depth = 5;
  specs.push_back(cart5);
  ClassifierSpec knn5;
  knn5.algorithm = Algorithm::knn;
  knn5.k = 5;
  specs.push_back(knn5);
  ClassifierSpec knn10 = knn5;
  knn10.k = 10;
  specs.push_back(knn10);
  ClassifierSpec lr;
  lr.algorithm = Algorithm::log_reg;
  specs.push_back(lr);
  ClassifierSpec lda;
  lda.algorithm = Algorithm::lda;
  specs.push_back(lda);
  ClassifierSpec nb;
  nb.algorithm = Algorithm::gaussian_nb;
  specs.push_back(nb);
  return specs;
}

const TreeModel& Model::tree() const {
  const TreeModel* t = std::get_if<TreeModel>(&params);
  if (t == nullptr) throw std::invalid_argument("model is not a cart tree");
  return *t;
}

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double gini(std::int64_t c0, std::int64_t c1) {
  const double n = static_cast<double>(c0 + c1);
  if (n == 0.0) return 0.0;
  const double p0 = static_cast<double>(c0) / n;
  const double p1 = static_cast<double>(c1) / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

// ---------------------------------------------------------------------------
// CART

// Split quality is compared with exact integer arithmetic. For a candidate
// left/right partition with class counts (l0,l1) and (r0,r1), the weighted
// Gini impurity is minimized exactly when
//   Q = (l0^2+l1^2)/nL + (r0^2+r1^2)/nR
// is maximized. Q is the rational (A*nR + B*nL) / (nL*nR); comparing two
// candidates (and a candidate against its parent) by cross-multiplying in
// 128-bit integers makes split selection and tie-breaking exact, so fitted
// trees are reproducible bit-for-bit.
struct SplitQuality {
  __int128 num = 0;
  std::int64_t den = 1;  // nL * nR
};

bool better(const SplitQuality& a, const SplitQuality& b) {
  return static_cast<__int128>(a.num) * b.den > static_cast<__int128>(b.num) * a.den;
}

bool improves_parent(const SplitQuality& q, std::int64_t c0, std::int64_t c1) {
  // Q > (c0^2 + c1^2) / n  <=>  num * n > (c0^2+c1^2) * den
  const std::int64_t n = c0 + c1;
  const __int128 parent = static_cast<__int128>(c0) * c0 + static_cast<__int128>(c1) * c1;
  return q.num * n > parent * q.den;
}

struct BestSplit {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  SplitQuality quality;
};

class CartBuilder {
 public:
  CartBuilder(const LabeledMatrix& m, const ClassifierSpec& spec) : m_(m), spec_(spec) {}

  TreeModel build() {
    std::vector<std::size_t> indices(m_.rows());
    std::iota(indices.begin(), indices.end(), 0);
    TreeModel tree;
    grow(tree, indices, 0);
    return tree;
  }

 private:
  int grow(TreeModel& tree, std::vector<std::size_t>& indices, int depth) {
    std::int64_t c0 = 0, c1 = 0;
    for (std::size_t i : indices) m_.labels[i] == 0 ? ++c0 : ++c1;

    const int node_id = static_cast<int>(tree.nodes.size());
    TreeNode node;
    node.n_samples = static_cast<std::int64_t>(indices.size());
    node.class_counts = {c0, c1};
    node.impurity = gini(c0, c1);
    tree.nodes.push_back(node);
    tree.depth = std::max(tree.depth, depth);

    const bool pure = c0 == 0 || c1 == 0;
    if (pure || depth >= spec_.max_depth ||
        indices.size() < static_cast<std::size_t>(spec_.min_samples_split))
      return node_id;

    const BestSplit split = find_best_split(indices, c0, c1);
    if (!split.found) return node_id;

    std::vector<std::size_t> left, right;
    for (std::size_t i : indices) {
      if (m_.at(i, static_cast<std::size_t>(split.feature)) <= split.threshold)
        left.push_back(i);
      else
        right.push_back(i);
    }
    indices.clear();
    indices.shrink_to_fit();

    tree.nodes[node_id].feature = split.feature;
    tree.nodes[node_id].threshold = split.threshold;
    const int left_id = grow(tree, left, depth + 1);
    tree.nodes[node_id].left = left_id;
    const int right_id = grow(tree, right, depth + 1);
    tree.nodes[node_id].right = right_id;
    return node_id;
  }

  BestSplit find_best_split(const std::vector<std::size_t>& indices, std::int64_t c0,
                            std::int64_t c1) const {
    BestSplit best;
    const std::int64_t n = c0 + c1;
    std::vector<std::pair<double, int>> column(indices.size());

    for (std::size_t f = 0; f < m_.width(); ++f) {
      for (std::size_t i = 0; i < indices.size(); ++i)
        column[i] = {m_.at(indices[i], f), m_.labels[indices[i]]};
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      std::int64_t l0 = 0, l1 = 0;
      std::size_t i = 0;
      while (i < column.size()) {
        // Consume one group of equal values.
        std::size_t j = i;
        while (j < column.size() && column[j].first == column[i].first) {
          column[j].second == 0 ? ++l0 : ++l1;
          ++j;
        }
        if (j == column.size()) break;  // no value beyond this group

        const std::int64_t nl = l0 + l1;
        const std::int64_t nr = n - nl;
        const std::int64_t r0 = c0 - l0;
        const std::int64_t r1 = c1 - l1;
        SplitQuality q;
        q.num = (static_cast<__int128>(l0) * l0 + static_cast<__int128>(l1) * l1) * nr +
                (static_cast<__int128>(r0) * r0 + static_cast<__int128>(r1) * r1) * nl;
        q.den = nl * nr;

        // Thresholds ascend within a feature and features ascend overall, so
        // requiring a strictly better quality implements the (lowest feature,
        // lowest threshold) tie-break.
        if (improves_parent(q, c0, c1) && (!best.found || better(q, best.quality))) {
          const double lo = column[j - 1].first;
          const double hi = column[j].first;
          double threshold = (lo + hi) / 2.0;
          if (!(threshold < hi)) threshold = lo;  // adjacent doubles round up
          best.found = true;
          best.feature = static_cast<int>(f);
          best.threshold = threshold;
          best.quality = q;
        }
        i = j;
      }
    }
    return best;
  }

  const LabeledMatrix& m_;
  const ClassifierSpec& spec_;
};

double tree_score(const TreeModel& tree, std::span<const double> row) {
  int node = 0;
  while (!tree.nodes[node].is_leaf()) {
    const TreeNode& t = tree.nodes[node];
    node = row[static_cast<std::size_t>(t.feature)] <= t.threshold ? t.left : t.right;
  }
  return tree.nodes[node].p1();
}

// ---------------------------------------------------------------------------
// Logistic regression

double logistic_loss(const LabeledMatrix& m, const std::vector<double>& w, double b) {
  double loss = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    double z = b;
    for (std::size_t j = 0; j < row.size(); ++j) z += w[j] * row[j];
    const double y = static_cast<double>(m.labels[i]);
    // softplus(z) - y*z, computed without overflow
    loss += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - y * z;
  }
  return loss / static_cast<double>(m.rows());
}

LogRegModel fit_log_reg(const ClassifierSpec& spec, const LabeledMatrix& m) {
  const std::size_t d = m.width();
  const std::size_t n = m.rows();
  LogRegModel model;
  model.weights.assign(d, 0.0);
  model.bias = 0.0;

  double loss = logistic_loss(m, model.weights, model.bias);
  model.loss_trace.push_back(loss);

  std::vector<double> grad(d, 0.0);
  std::vector<double> candidate(d, 0.0);
  for (int iter = 0; iter < spec.max_iter; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = m.row(i);
      double z = model.bias;
      for (std::size_t j = 0; j < d; ++j) z += model.weights[j] * row[j];
      const double err = sigmoid(z) - static_cast<double>(m.labels[i]);
      for (std::size_t j = 0; j < d; ++j) grad[j] += err * row[j];
      grad_b += err;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (double& g : grad) g *= inv_n;
    grad_b *= inv_n;

    // Plain gradient step at the configured rate; if the step would increase
    // the loss (possible on badly scaled inputs), halve it until it does not.
    double step = spec.learning_rate;
    double new_loss = loss;
    double new_bias = model.bias;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t j = 0; j < d; ++j) candidate[j] = model.weights[j] - step * grad[j];
      new_bias = model.bias - step * grad_b;
      new_loss = logistic_loss(m, candidate, new_bias);
      if (new_loss <= loss) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no descent direction left at fp precision

    model.weights = candidate;
    model.bias = new_bias;
    model.iterations = iter + 1;
    model.loss_trace.push_back(new_loss);
    const double delta = loss - new_loss;
    loss = new_loss;
    if (delta < spec.tol) {
      model.converged = true;
      break;
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// LDA

// In-place Cholesky factorization (lower triangle); false if not positive
// definite.
bool cholesky(std::vector<double>& a, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) sum -= a[i * d + k] * a[j * d + k];
      if (i == j) {
        if (sum <= 0.0) return false;
        a[i * d + i] = std::sqrt(sum);
      } else {
        a[i * d + j] = sum / a[j * d + j];
      }
    }
  }
  return true;
}

std::vector<double> cholesky_solve(const std::vector<double>& chol, std::size_t d,
                                   const std::vector<double>& rhs) {
  std::vector<double> y(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    double sum = rhs[i];
    for (std::size_t k = 0; k < i; ++k) sum -= chol[i * d + k] * y[k];
    y[i] = sum / chol[i * d + i];
  }
  std::vector<double> x(d, 0.0);
  for (std::size_t ii = d; ii-- > 0;) {
    double sum = y[ii];
    for (std::size_t k = ii + 1; k < d; ++k) sum -= chol[k * d + ii] * x[k];
    x[ii] = sum / chol[ii * d + ii];
  }
  return x;
}

LdaModel fit_lda(const ClassifierSpec& spec, const LabeledMatrix& m) {
  const std::size_t d = m.width();
  const std::size_t n = m.rows();

  LdaModel model;
  std::array<std::size_t, 2> counts{0, 0};
  model.class_means[0].assign(d, 0.0);
  model.class_means[1].assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = m.labels[i];
    ++counts[static_cast<std::size_t>(y)];
    const auto row = m.row(i);
    for (std::size_t j = 0; j < d; ++j) model.class_means[static_cast<std::size_t>(y)][j] += row[j];
  }
  for (int c : {0, 1})
    for (double& v : model.class_means[static_cast<std::size_t>(c)])
      v /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
  model.priors = {static_cast<double>(counts[0]) / static_cast<double>(n),
                  static_cast<double>(counts[1]) / static_cast<double>(n)};

  // Pooled within-class covariance (maximum-likelihood scaling) plus ridge.
  std::vector<double> cov(d * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = m.row(i);
    const auto& mu = model.class_means[static_cast<std::size_t>(m.labels[i])];
    for (std::size_t a = 0; a < d; ++a) {
      const double da = row[a] - mu[a];
      for (std::size_t b = 0; b <= a; ++b) cov[a * d + b] += da * (row[b] - mu[b]);
    }
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      cov[a * d + b] /= static_cast<double>(n);
      cov[b * d + a] = cov[a * d + b];
    }
  for (std::size_t a = 0; a < d; ++a) cov[a * d + a] += spec.ridge;
  model.pooled_covariance = cov;

  std::vector<double> chol = cov;
  if (!cholesky(chol, d))
    throw std::invalid_argument("lda: pooled covariance is singular (increase ridge)");

  std::vector<double> diff(d);
  for (std::size_t j = 0; j < d; ++j)
    diff[j] = model.class_means[1][j] - model.class_means[0][j];
  model.weights = cholesky_solve(chol, d, diff);

  const std::vector<double> s1 = cholesky_solve(chol, d, model.class_means[1]);
  const std::vector<double> s0 = cholesky_solve(chol, d, model.class_means[0]);
  double q1 = 0.0, q0 = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    q1 += model.class_means[1][j] * s1[j];
    q0 += model.class_means[0][j] * s0[j];
  }
  model.bias = -0.5 * q1 + 0.5 * q0 + std::log(model.priors[1] / model.priors[0]);
  return model;
}

// ---------------------------------------------------------------------------
// Gaussian naive Bayes

GaussianNbModel fit_gaussian_nb(const ClassifierSpec& spec, const LabeledMatrix& m) {
  const std::size_t d = m.width();
  const std::size_t n = m.rows();
  GaussianNbModel model;
  std::array<std::size_t, 2> counts{0, 0};
  for (int c : {0, 1}) {
    model.means[static_cast<std::size_t>(c)].assign(d, 0.0);
    model.variances[static_cast<std::size_t>(c)].assign(d, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = static_cast<std::size_t>(m.labels[i]);
    ++counts[y];
    const auto row = m.row(i);
    for (std::size_t j = 0; j < d; ++j) model.means[y][j] += row[j];
  }
  for (std::size_t c = 0; c < 2; ++c)
    for (double& v : model.means[c]) v /= static_cast<double>(counts[c]);
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = static_cast<std::size_t>(m.labels[i]);
    const auto row = m.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = row[j] - model.means[y][j];
      model.variances[y][j] += diff * diff;
    }
  }
  for (std::size_t c = 0; c < 2; ++c)
    for (double& v : model.variances[c])
      v = std::max(v / static_cast<double>(counts[c]), spec.variance_floor);
  model.priors = {static_cast<double>(counts[0]) / static_cast<double>(n),
                  static_cast<double>(counts[1]) / static_cast<double>(n)};
  return model;
}

double nb_score(const GaussianNbModel& model, std::span<const double> row) {
  std::array<double, 2> log_post;
  for (std::size_t c = 0; c < 2; ++c) {
    double lp = std::log(model.priors[c]);
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double var = model.variances[c][j];
      const double diff = row[j] - model.means[c][j];
      lp += -0.5 * std::log(2.0 * 3.14159265358979323846 * var) - diff * diff / (2.0 * var);
    }
    log_post[c] = lp;
  }
  // P(class 1 | x) without overflow
  return sigmoid(log_post[1] - log_post[0]);
}

// ---------------------------------------------------------------------------
// k-nearest neighbors

double knn_score(const KnnModel& model, std::size_t width, std::span<const double> row) {
  const std::size_t n = model.labels.size();
  const std::size_t k_eff = std::min<std::size_t>(static_cast<std::size_t>(model.k), n);
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    const double* train = model.rows.data() + i * width;
    for (std::size_t j = 0; j < width; ++j) {
      const double diff = row[j] - train[j];
      sum += diff * diff;
    }
    dist[i] = {sum, i};  // index breaks exact distance ties deterministically
  }
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_eff), dist.end());
  std::size_t ones = 0;
  for (std::size_t i = 0; i < k_eff; ++i)
    if (model.labels[dist[i].second] == 1) ++ones;
  return static_cast<double>(ones) / static_cast<double>(k_eff);
}

}  // namespace

Model fit_model(const ClassifierSpec& spec, const LabeledMatrix& m, std::uint64_t seed) {
  (void)seed;  // all five fits are deterministic; kept for contract stability
  spec.validate();
  if (m.rows() == 0) throw std::invalid_argument("fit_model: empty training matrix");
  if (m.width() == 0) throw std::invalid_argument("fit_model: matrix has no columns");
  for (int label : m.labels)
    if (label != 0 && label != 1)
      throw std::invalid_argument("fit_model: labels must be 0 or 1");

  const bool needs_both_classes =
      spec.algorithm != Algorithm::cart && spec.algorithm != Algorithm::knn;
  if (needs_both_classes) {
    if (m.rows() < 2) throw std::invalid_argument("fit_model: need at least 2 rows");
    const bool has0 = std::find(m.labels.begin(), m.labels.end(), 0) != m.labels.end();
    const bool has1 = std::find(m.labels.begin(), m.labels.end(), 1) != m.labels.end();
    if (!has0 || !has1)
      throw std::invalid_argument(std::string("fit_model: ") + to_string(spec.algorithm) +
                                  " requires both classes in the training set");
  }

  Model model;
  model.spec = spec;
  model.n_features = m.width();
  switch (spec.algorithm) {
    case Algorithm::log_reg: model.params = fit_log_reg(spec, m); break;
    case Algorithm::lda: model.params = fit_lda(spec, m); break;
    case Algorithm::gaussian_nb: model.params = fit_gaussian_nb(spec, m); break;
    case Algorithm::cart: model.params = CartBuilder(m, spec).build(); break;
    case Algorithm::knn: {
      KnnModel knn;
      knn.k = spec.k;
      knn.rows = m.values;
      knn.labels = m.labels;
      model.params = std::move(knn);
      break;
    }
  }
  return model;
}

std::vector<double> predict_scores(const Model& model, const LabeledMatrix& m) {
  if (m.width() != model.n_features)
    throw std::invalid_argument("predict_scores: row width " + std::to_string(m.width()) +
                                " does not match training width " +
                                std::to_string(model.n_features));
  std::vector<double> scores(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    scores[i] = std::visit(
        [&](const auto& params) -> double {
          using T = std::decay_t<decltype(params)>;
          if constexpr (std::is_same_v<T, LogRegModel>) {
            double z = params.bias;
            for (std::size_t j = 0; j < row.size(); ++j) z += params.weights[j] * row[j];
            return sigmoid(z);
          } else if constexpr (std::is_same_v<T, LdaModel>) {
            double z = params.bias;
            for (std::size_t j = 0; j < row.size(); ++j) z += params.weights[j] * row[j];
            return sigmoid(z);
          } else if constexpr (std::is_same_v<T, GaussianNbModel>) {
            return nb_score(params, row);
          } else if constexpr (std::is_same_v<T, TreeModel>) {
            return tree_score(params, row);
          } else {
            return knn_score(params, model.n_features, row);
          }
        },
        model.params);
  }
  return scores;
}

std::vector<int> predict_labels(const Model& model, const LabeledMatrix& m, double threshold) {
  const std::vector<double> scores = predict_scores(model, m);
  std::vector<int> labels(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) labels[i] = scores[i] >= threshold ? 1 : 0;
  return labels;
}

std::string model_to_json(const Model& model) {
  nlohmann::ordered_json j;
  j["algorithm"] = to_string(model.spec.algorithm);
  j["label"] = model.spec.label();
  j["n_features"] = model.n_features;
  std::visit(
      [&](const auto& params) {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, LogRegModel>) {
          j["weights"] = params.weights;
          j["bias"] = params.bias;
          j["iterations"] = params.iterations;
          j["converged"] = params.converged;
          j["final_loss"] = params.loss_trace.back();
        } else if constexpr (std::is_same_v<T, LdaModel>) {
          j["class_means"] = {params.class_means[0], params.class_means[1]};
          j["pooled_covariance"] = params.pooled_covariance;
          j["priors"] = params.priors;
          j["weights"] = params.weights;
          j["bias"] = params.bias;
        } else if constexpr (std::is_same_v<T, GaussianNbModel>) {
          j["means"] = {params.means[0], params.means[1]};
          j["variances"] = {params.variances[0], params.variances[1]};
          j["priors"] = params.priors;
        } else if constexpr (std::is_same_v<T, TreeModel>) {
          j["depth"] = params.depth;
          nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
          for (const TreeNode& n : params.nodes) {
            nlohmann::ordered_json node;
            node["feature"] = n.feature;
            node["threshold"] = n.threshold;
            node["impurity"] = n.impurity;
            node["n_samples"] = n.n_samples;
            node["class_counts"] = n.class_counts;
            node["left"] = n.left;
            node["right"] = n.right;
            if (n.is_leaf())
              node["class_distribution"] = {1.0 - n.p1(), n.p1()};
            nodes.push_back(std::move(node));
          }
          j["nodes"] = std::move(nodes);
        } else {
          j["k"] = params.k;
          j["n_train"] = params.labels.size();
          j["rows"] = params.rows;
          j["labels"] = params.labels;
        }
      },
      model.params);
  return j.dump();
}

}  // namespace crfdspam

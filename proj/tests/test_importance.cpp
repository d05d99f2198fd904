#include <doctest.h>

#include <cmath>
#include <vector>

#include "crfdspam/importance.hpp"
#include "crfdspam/rng.hpp"

using namespace crfdspam;

namespace {

LabeledMatrix make_matrix(const std::vector<std::vector<double>>& rows,
                          const std::vector<int>& labels, std::size_t width = 0) {
  LabeledMatrix m;
  const std::size_t w = width == 0 ? rows[0].size() : width;
  for (std::size_t j = 0; j < w; ++j) m.feature_names.push_back("f" + std::to_string(j));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.instance_ids.push_back("i" + std::to_string(i));
    m.labels.push_back(labels[i]);
    m.values.insert(m.values.end(), rows[i].begin(), rows[i].end());
  }
  return m;
}

Model fit_cart(const LabeledMatrix& m, int depth) {
  ClassifierSpec spec;
  spec.algorithm = Algorithm::cart;
  spec.max_depth = depth;
  return fit_model(spec, m);
}

}  // namespace

TEST_SUITE("importance") {

TEST_CASE("a single split on feature 2 concentrates all importance there") {
  // Eight features; only f2 separates the classes.
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 10; ++i) {
    std::vector<double> row(8, 1.0);
    row[2] = i < 5 ? 0.0 : 10.0;
    rows.push_back(row);
    labels.push_back(i < 5 ? 0 : 1);
  }
  const Model model = fit_cart(make_matrix(rows, labels), 3);
  const GiniImportance imp = gini_importance(model);
  CHECK(!imp.no_split);
  const std::vector<double> expected = {0, 0, 1, 0, 0, 0, 0, 0};
  CHECK(imp.values == expected);
}

TEST_CASE("importances are non-negative and sum to one on random trees") {
  Rng rng(103u);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 120; ++i) {
      const int y = static_cast<int>(rng.below(2));
      rows.push_back({rng.normal(y, 1.2), rng.uniform01() * 4.0, rng.normal(0, 1),
                      std::floor(rng.uniform(0, 5))});
      labels.push_back(y);
    }
    const Model model = fit_cart(make_matrix(rows, labels), 8);
    const GiniImportance imp = gini_importance(model);
    if (imp.no_split) {
      for (double v : imp.values) CHECK(v == 0.0);
      continue;
    }
    double sum = 0.0;
    for (double v : imp.values) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("hand-built depth-2 tree matches manual impurity arithmetic") {
  // Four points, two features. f0 separates {a,b} from {c,d}; within the
  // left pair f1 separates the labels.
  //   a=(0,0,label 0)  b=(0,1,label 1)  c=(10,0,label 1)  d=(10,1,label 1)
  const LabeledMatrix m =
      make_matrix({{0, 0}, {0, 1}, {10, 0}, {10, 1}}, {0, 1, 1, 1});
  const Model model = fit_cart(m, 2);
  const TreeModel& tree = model.tree();

  // Root: counts (1,3), impurity 1 - (1/4)^2 - (3/4)^2 = 3/8.
  CHECK(tree.nodes[0].impurity == doctest::Approx(0.375).epsilon(1e-12));

  // Manual MDI. Root split must be on f0 (only split with a strict decrease
  // of 3/8 - 0.5*0.5 = 1/8 beats f1's 3/8 - 0.5*0.5 = 1/8... compute both):
  //   f0 split: left {a,b} -> (1,1) G=0.5, right {c,d} -> (0,2) G=0.
  //     weighted = 0.5*0.5 + 0.5*0 = 0.25, decrease = 0.125
  //   f1 split: left {a,c} -> (1,1) G=0.5, right {b,d} -> (0,2) G=0.
  //     weighted = 0.25, decrease = 0.125 (exact tie -> lower feature wins)
  REQUIRE(!tree.nodes[0].is_leaf());
  CHECK(tree.nodes[0].feature == 0);

  // Left child {a,b}: impurity 0.5, splits on f1 with decrease 0.5.
  const GiniImportance imp = gini_importance(model);
  // Contributions: f0: (4/4)*0.125 = 0.125; f1: (2/4)*0.5 = 0.25.
  // Normalized: f0 = 1/3, f1 = 2/3.
  CHECK(imp.values[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(imp.values[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("all-leaf tree is flagged no-split with uniform zeros") {
  const LabeledMatrix m = make_matrix({{1}, {1}, {1}}, {0, 1, 0});
  const Model model = fit_cart(m, 4);  // single value: nothing to split on
  const GiniImportance imp = gini_importance(model);
  CHECK(imp.no_split);
  CHECK(imp.values == std::vector<double>{0.0});
}

TEST_CASE("gini_importance rejects non-tree models") {
  ClassifierSpec spec;
  spec.algorithm = Algorithm::knn;
  spec.k = 1;
  const LabeledMatrix m = make_matrix({{1}, {2}}, {0, 1});
  const Model knn = fit_model(spec, m);
  CHECK_THROWS_AS(gini_importance(knn), std::invalid_argument);
}

TEST_CASE("averaging is the arithmetic mean with name tie-breaks") {
  // Two single-split trees on different features.
  std::vector<std::vector<double>> rows_a, rows_b;
  std::vector<int> labels;
  for (int i = 0; i < 8; ++i) {
    std::vector<double> ra(3, 0.0), rb(3, 0.0);
    ra[0] = i < 4 ? 0 : 1;  // tree A splits on f0
    rb[1] = i < 4 ? 0 : 1;  // tree B splits on f1
    rows_a.push_back(ra);
    rows_b.push_back(rb);
    labels.push_back(i < 4 ? 0 : 1);
  }
  const Model a = fit_cart(make_matrix(rows_a, labels), 2);
  const Model b = fit_cart(make_matrix(rows_b, labels), 2);
  const std::vector<std::string> names = {"f0", "f1", "f2"};

  const auto single = averaged_importance(std::vector{a}, names);
  CHECK(single[0].feature == "f0");
  CHECK(single[0].importance == 1.0);

  const std::vector<Model> both = {a, b};
  const auto avg = averaged_importance(both, names);
  REQUIRE(avg.size() == 3);
  CHECK(avg[0].importance == 0.5);
  CHECK(avg[1].importance == 0.5);
  // Tie between f0 and f1 resolves alphabetically.
  CHECK(avg[0].feature == "f0");
  CHECK(avg[1].feature == "f1");
  CHECK(avg[2].importance == 0.0);
}

TEST_CASE("select_top_k on a canonical-name ranking picks those columns") {
  LabeledMatrix m;
  m.feature_names = feature_name_list();
  m.instance_ids = {"a", "b"};
  m.labels = {0, 1};
  m.values.assign(2 * kFeatureCount, 0.0);
  for (std::size_t c = 0; c < kFeatureCount; ++c) {
    m.at(0, c) = static_cast<double>(c);
    m.at(1, c) = static_cast<double>(c) + 100.0;
  }
  // Ranking puts review_count, useful_votes, reviewer_expertise on top.
  std::vector<RankedFeature> ranking = {
      {"review_count", 0.4},      {"useful_votes", 0.3},  {"reviewer_expertise", 0.2},
      {"photo_count", 0.05},      {"avg_gap", 0.03},      {"avg_rating_deviation", 0.01},
      {"first_review", 0.005},    {"reviewer_activity", 0.005}};
  const TopKSelection sel = select_top_k(ranking, 3, m);
  CHECK(sel.features ==
        std::vector<std::string>{"review_count", "useful_votes", "reviewer_expertise"});
  CHECK(sel.column_indices == std::vector<std::size_t>{1, 2, 3});
  CHECK(sel.matrix.row(0)[0] == 1.0);  // review_count column of row a
}

TEST_CASE("averaged ranking is reproducible for a fixed seed") {
  Rng rng(211u);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 200; ++i) {
    const int y = static_cast<int>(rng.below(2));
    rows.push_back({rng.normal(y * 1.5, 1.0), rng.uniform01() * 3.0, rng.normal(0, 1),
                    std::floor(rng.uniform(0, 4)), rng.normal(y * 0.5, 2.0)});
    labels.push_back(y);
  }
  const LabeledMatrix m = make_matrix(rows, labels);
  auto rank_once = [&] {
    std::vector<Model> models;
    for (int fold = 0; fold < 5; ++fold) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (i % 5 != static_cast<std::size_t>(fold)) subset.push_back(i);
      models.push_back(fit_cart(select_rows(m, subset), 6));
    }
    return averaged_importance(models, m.feature_names);
  };
  const auto a = rank_once();
  const auto b = rank_once();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].feature == b[i].feature);
    CHECK(a[i].importance == b[i].importance);
  }
}

TEST_CASE("select_top_k restricts columns in ranking order") {
  LabeledMatrix m = make_matrix({{1, 2, 3}, {4, 5, 6}}, {0, 1});
  const std::vector<RankedFeature> ranking = {{"f2", 0.6}, {"f0", 0.3}, {"f1", 0.1}};

  const TopKSelection k2 = select_top_k(ranking, 2, m);
  CHECK(k2.features == std::vector<std::string>{"f2", "f0"});
  CHECK(k2.matrix.feature_names == std::vector<std::string>{"f2", "f0"});
  CHECK(k2.matrix.values == std::vector<double>{3, 1, 6, 4});

  const TopKSelection identity = select_top_k(ranking, 3, m);
  CHECK(identity.matrix.width() == 3);

  CHECK_THROWS_AS(select_top_k(ranking, 0, m), std::invalid_argument);
  CHECK_THROWS_AS(select_top_k(ranking, 4, m), std::invalid_argument);
}

TEST_CASE("a feature never used in a split has importance exactly zero") {
  Rng rng(107u);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 60; ++i) {
    const int y = static_cast<int>(rng.below(2));
    // f1 is constant: it can never host a split.
    rows.push_back({rng.normal(3.0 * y, 1.0), 7.5});
    labels.push_back(y);
  }
  labels[0] = 0;
  labels[1] = 1;
  const Model model = fit_cart(make_matrix(rows, labels), 6);
  const GiniImportance imp = gini_importance(model);
  if (!imp.no_split) CHECK(imp.values[1] == 0.0);
}

}  // TEST_SUITE

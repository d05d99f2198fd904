#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "crfdspam/rng.hpp"
#include "crfdspam/transform.hpp"

using namespace crfdspam;

namespace {

// Reference photo-count frequency counts.
const std::map<int, int> kPhotoCounts = {{0, 7944}, {1, 2301}, {2, 1756}, {3, 1401},
                                         {4, 822},  {5, 1382}, {6, 550},  {7, 347},
                                         {8, 780},  {9, 342},  {10, 460}};

std::vector<double> photo_column() {
  std::vector<double> column;
  for (const auto& [value, count] : kPhotoCounts)
    column.insert(column.end(), static_cast<std::size_t>(count), static_cast<double>(value));
  return column;
}

// Independent oracle: fraction of the column <= v by direct count.
double ecdf_oracle(const std::vector<double>& column, double v) {
  std::size_t count = 0;
  for (double x : column)
    if (x <= v) ++count;
  return static_cast<double>(count) / static_cast<double>(column.size());
}

}  // namespace

TEST_SUITE("cdf_transform") {

TEST_CASE("photo-count table matches the reference rounded values") {
  const std::vector<double> column = photo_column();
  const FrequencyTable t = fit_crfd(column);
  REQUIRE(t.n_total == 18085);
  REQUIRE(t.values.size() == 11);
  const std::vector<double> rounded = {0.44, 0.57, 0.67, 0.75, 0.79, 0.87,
                                       0.90, 0.92, 0.96, 0.98, 1.00};
  for (std::size_t i = 0; i < rounded.size(); ++i)
    CHECK(std::abs(t.cum_rel_freq[i] - rounded[i]) <= 0.01);
  // Exact values against the count oracle.
  for (std::size_t i = 0; i < t.values.size(); ++i)
    CHECK(t.cum_rel_freq[i] == ecdf_oracle(column, t.values[i]));
}

TEST_CASE("degenerate single-value column") {
  const std::vector<double> column = {7, 7, 7};
  const FrequencyTable t = fit_crfd(column);
  CHECK(t.values == std::vector<double>{7});
  CHECK(t.counts == std::vector<std::int64_t>{3});
  CHECK(t.cum_rel_freq == std::vector<double>{1.0});
}

TEST_CASE("small mixed column") {
  const std::vector<double> column = {1, 2, 2, 5};
  const FrequencyTable t = fit_crfd(column);
  CHECK(t.values == std::vector<double>{1, 2, 5});
  CHECK(t.cum_rel_freq == std::vector<double>{0.25, 0.75, 1.0});
}

TEST_CASE("fit rejects empty and non-finite input") {
  CHECK_THROWS_AS(fit_crfd({}), std::invalid_argument);
  const std::vector<double> with_nan = {1.0, std::nan("")};
  CHECK_THROWS_AS(fit_crfd(with_nan), std::invalid_argument);
  const std::vector<double> with_inf = {1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(fit_crfd(with_inf), std::invalid_argument);
}

TEST_CASE("eval on the photo table") {
  const std::vector<double> column = photo_column();
  const FrequencyTable t = fit_crfd(column);
  CHECK(eval_crfd(t, 3.0) == doctest::Approx(13402.0 / 18085.0).epsilon(1e-12));
  CHECK(std::abs(eval_crfd(t, 3.0) - 0.75) <= 0.01);
  CHECK(eval_crfd(t, -1.0) == 0.0);  // below every observed value
  CHECK(eval_crfd(t, 2.5) == 12001.0 / 18085.0);
  CHECK(eval_crfd(t, 1e9) == 1.0);
}

TEST_CASE("eval equals the count oracle on randomized columns") {
  Rng rng(7u);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(300);
    std::vector<double> column(n);
    for (double& v : column)
      v = std::floor(rng.uniform(-20.0, 20.0) * 4.0) / 4.0;  // force duplicates
    const FrequencyTable t = fit_crfd(column);
    for (int q = 0; q < 40; ++q) {
      double v = rng.uniform(-25.0, 25.0);
      if (q % 5 == 0) v = column[rng.below(n)];  // exact observed value
      CHECK(eval_crfd(t, v) == ecdf_oracle(column, v));
    }
  }
}

TEST_CASE("monotonicity and range") {
  Rng rng(11u);
  std::vector<double> column(200);
  for (double& v : column) v = rng.normal(0.0, 10.0);
  const FrequencyTable t = fit_crfd(column);
  double prev = -1.0;
  for (double v = -40.0; v <= 40.0; v += 0.37) {
    const double y = eval_crfd(t, v);
    CHECK(y >= 0.0);
    CHECK(y <= 1.0);
    CHECK(y >= prev);
    prev = y;
  }
}

TEST_CASE("rank equivalence: output depends only on rank, not magnitude") {
  Rng rng(13u);
  std::vector<double> column(120);
  for (double& v : column) v = rng.uniform(0.0, 5.0);
  // exp is strictly increasing, so ranks are preserved.
  std::vector<double> stretched(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) stretched[i] = std::exp(column[i]);
  const FrequencyTable t1 = fit_crfd(column);
  const FrequencyTable t2 = fit_crfd(stretched);
  for (std::size_t i = 0; i < column.size(); ++i)
    CHECK(eval_crfd(t1, column[i]) == eval_crfd(t2, stretched[i]));
}

TEST_CASE("strictly increasing transform is preserved across distinct values") {
  const std::vector<double> column = {3, 1, 4, 1, 5, 9, 2, 6};
  const FrequencyTable t = fit_crfd(column);
  for (std::size_t i = 1; i < t.values.size(); ++i)
    CHECK(t.cum_rel_freq[i] > t.cum_rel_freq[i - 1]);
}

TEST_CASE("outlier robustness against min-max") {
  std::vector<double> column = {2, 3, 5, 8, 13, 21, 34};
  std::vector<double> blown = column;
  *std::max_element(blown.begin(), blown.end()) *= 1e6;

  const FrequencyTable before = fit_crfd(column);
  const FrequencyTable after = fit_crfd(blown);
  const MinMaxScale mm_before = fit_minmax(column);
  const MinMaxScale mm_after = fit_minmax(blown);

  for (double v : column) {
    if (v == 34) continue;  // the replaced maximum itself
    CHECK(eval_crfd(before, v) == eval_crfd(after, v));
    // The column minimum is a fixed point of min-max by definition (0 on
    // both sides); every other value is flattened by the outlier.
    if (v != 2) CHECK(mm_before(v) != mm_after(v));
  }
}

TEST_CASE("min-max pins the column minimum regardless of outliers") {
  const std::vector<double> column = {2, 3, 5, 8};
  const MinMaxScale mm = fit_minmax(column);
  CHECK(mm(2.0) == 0.0);
}

TEST_CASE("transform_matrix substitutes every cell") {
  Rng rng(17u);
  LabeledMatrix m;
  m.feature_names = {"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int i = 0; i < 20; ++i) {
    m.instance_ids.push_back("i" + std::to_string(i));
    m.labels.push_back(i % 2);
    for (int j = 0; j < 8; ++j) m.values.push_back(std::floor(rng.uniform(0.0, 6.0)));
  }
  std::vector<FrequencyTable> tables;
  std::vector<std::vector<double>> columns(8);
  for (std::size_t c = 0; c < 8; ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) columns[c].push_back(m.at(r, c));
    tables.push_back(fit_crfd(columns[c]));
  }
  const LabeledMatrix out = transform_matrix(m, tables);
  CHECK(out.labels == m.labels);
  CHECK(out.instance_ids == m.instance_ids);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < 8; ++c)
      CHECK(out.at(r, c) == ecdf_oracle(columns[c], m.at(r, c)));

  // Fitting data maxima map to 1; a constant column becomes all ones.
  for (std::size_t c = 0; c < 8; ++c) {
    const double mx = *std::max_element(columns[c].begin(), columns[c].end());
    CHECK(eval_crfd(tables[c], mx) == 1.0);
  }

  std::vector<FrequencyTable> short_tables(tables.begin(), tables.end() - 1);
  CHECK_THROWS_AS(transform_matrix(m, short_tables), std::invalid_argument);
}

TEST_CASE("constant column transforms to all ones") {
  LabeledMatrix m;
  m.feature_names = {"x"};
  for (int i = 0; i < 5; ++i) {
    m.instance_ids.push_back("i" + std::to_string(i));
    m.labels.push_back(i % 2);
    m.values.push_back(3.25);
  }
  const auto t = ColumnTransforms::fit(FeatureMode::cumulative, m);
  const LabeledMatrix out = t.apply(m);
  for (std::size_t r = 0; r < out.rows(); ++r) CHECK(out.at(r, 0) == 1.0);
}

TEST_CASE("min-max examples") {
  const std::vector<double> column = {0, 10};
  const MinMaxScale mm = fit_minmax(column);
  CHECK(mm(5.0) == 0.5);
  CHECK(mm(0.0) == 0.0);
  CHECK(mm(-3.0) == 0.0);   // clamped
  CHECK(mm(12.0) == 1.0);   // clamped

  const std::vector<double> outliered = {0, 1, 2, 1000};
  CHECK(fit_minmax(outliered)(2.0) == doctest::Approx(0.002).epsilon(1e-12));

  const std::vector<double> constant = {4, 4, 4};
  CHECK_THROWS_WITH_AS(fit_minmax(constant) /* zero range */, doctest::Contains("zero range"),
                       std::invalid_argument);
}

TEST_CASE("z-score examples use the population deviation") {
  const std::vector<double> column = {1, 3};
  const ZScore z = fit_zscore(column);
  CHECK(z(2.0) == 0.0);
  CHECK(z(3.0) == 1.0);
  const std::vector<double> constant = {2, 2};
  CHECK_THROWS_AS(fit_zscore(constant), std::invalid_argument);
}

TEST_CASE("table JSON round-trips") {
  const std::vector<double> column = {1, 2, 2, 5, 5, 5};
  const FrequencyTable t = fit_crfd(column);
  const FrequencyTable back = table_from_json(table_to_json(t));
  CHECK(back == t);
}

TEST_CASE("preprocessing timer is non-negative and additive") {
  Rng rng(23u);
  LabeledMatrix m;
  m.feature_names = feature_name_list();
  const std::size_t rows = 20000;
  m.values.reserve(rows * kFeatureCount);
  for (std::size_t i = 0; i < rows; ++i) {
    m.instance_ids.push_back("i" + std::to_string(i));
    m.labels.push_back(static_cast<int>(i % 2));
    for (std::size_t j = 0; j < kFeatureCount; ++j)
      m.values.push_back(std::floor(rng.uniform(0.0, 50.0)));
  }
  const double once = preprocessing_ms(m, 1);
  CHECK(once >= 0.0);
  const double thrice = preprocessing_ms(m, 3);
  CHECK(thrice >= once);
}

}  // TEST_SUITE

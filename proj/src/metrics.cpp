#include "crfdspam/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crfdspam/util.hpp"

namespace crfdspam {

Confusion confusion(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size())
    throw std::invalid_argument("confusion: y_true and y_pred differ in length");
  Confusion c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1))
      throw std::invalid_argument("confusion: labels must be 0 or 1");
    if (t == 0)
      p == 0 ? ++c.tp : ++c.fn;
    else
      p == 0 ? ++c.fp : ++c.tn;
  }
  return c;
}

namespace {

double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

ClassMetrics class_metrics(double tp, double fp, double fn) {
  ClassMetrics m;
  m.precision = safe_ratio(tp, tp + fp);
  m.recall = safe_ratio(tp, tp + fn);
  m.f1 = safe_ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
  return m;
}

}  // namespace

PerClassMetrics prf(const Confusion& c) {
  PerClassMetrics out;
  out.fake = class_metrics(static_cast<double>(c.tp), static_cast<double>(c.fp),
                           static_cast<double>(c.fn));
  // For class 1 the roles flip: tn are its true positives.
  out.genuine = class_metrics(static_cast<double>(c.tn), static_cast<double>(c.fn),
                              static_cast<double>(c.fp));
  return out;
}

double accuracy(const Confusion& c) {
  return safe_ratio(static_cast<double>(c.tp + c.tn), static_cast<double>(c.total()));
}

double mcc(const Confusion& c) {
  const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  const double fn = static_cast<double>(c.fn), tn = static_cast<double>(c.tn);
  const double f1 = tp + fp, f2 = tp + fn, f3 = tn + fp, f4 = tn + fn;
  if (f1 == 0.0 || f2 == 0.0 || f3 == 0.0 || f4 == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(f1 * f2 * f3 * f4);
}

double auc(std::span<const int> y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size())
    throw std::invalid_argument("auc: y_true and scores differ in length");
  std::vector<double> class0;
  std::vector<double> class1;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] == 0)
      class0.push_back(scores[i]);
    else if (y_true[i] == 1)
      class1.push_back(scores[i]);
    else
      throw std::invalid_argument("auc: labels must be 0 or 1");
  }
  if (class0.empty() || class1.empty())
    throw std::invalid_argument("auc: both classes must be present");

  std::sort(class0.begin(), class0.end());
  // Sum over class-1 instances of (#class0 strictly below) + (#ties)/2.
  // Counts are integers and halves, so the accumulation is exact.
  double favorable = 0.0;
  for (double s : class1) {
    const auto lo = std::lower_bound(class0.begin(), class0.end(), s);
    const auto hi = std::upper_bound(class0.begin(), class0.end(), s);
    favorable += static_cast<double>(lo - class0.begin());
    favorable += 0.5 * static_cast<double>(hi - lo);
  }
  return favorable /
         (static_cast<double>(class0.size()) * static_cast<double>(class1.size()));
}

std::vector<double> correlation_matrix(const LabeledMatrix& m) {
  const std::size_t w = m.width();
  const std::size_t n = m.rows();
  if (n < 2) throw std::invalid_argument("correlation_matrix: need at least 2 rows");

  std::vector<double> mean(w, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < w; ++c) mean[c] += m.at(r, c);
  for (double& v : mean) v /= static_cast<double>(n);

  std::vector<double> centered(n * w);
  std::vector<double> sq(w, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < w; ++c) {
      const double d = m.at(r, c) - mean[c];
      centered[r * w + c] = d;
      sq[c] += d * d;
    }
  for (std::size_t c = 0; c < w; ++c)
    if (sq[c] == 0.0)
      throw std::invalid_argument("correlation_matrix: column " + m.feature_names[c] +
                                  " is constant");

  std::vector<double> corr(w * w, 0.0);
  for (std::size_t a = 0; a < w; ++a) {
    corr[a * w + a] = 1.0;
    for (std::size_t b = a + 1; b < w; ++b) {
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += centered[r * w + a] * centered[r * w + b];
      const double value = dot / std::sqrt(sq[a] * sq[b]);
      corr[a * w + b] = value;
      corr[b * w + a] = value;
    }
  }
  return corr;
}

void write_correlation_csv(const LabeledMatrix& m, const std::vector<double>& corr,
                           const std::filesystem::path& path) {
  const std::size_t w = m.width();
  std::string out = "feature";
  for (const std::string& name : m.feature_names) out += "," + name;
  out += '\n';
  for (std::size_t a = 0; a < w; ++a) {
    out += m.feature_names[a];
    for (std::size_t b = 0; b < w; ++b) {
      out += ',';
      out += util::format_double(corr[a * w + b]);
    }
    out += '\n';
  }
  util::write_file_atomic(path, out);
}

}  // namespace crfdspam

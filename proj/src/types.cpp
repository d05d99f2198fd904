#include "crfdspam/types.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

namespace crfdspam {

const char* to_string(ReviewLabel label) {
  switch (label) {
    case ReviewLabel::fake: return "fake";
    case ReviewLabel::non_fake: return "non_fake";
    case ReviewLabel::unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(ProfileLabel label) {
  switch (label) {
    case ProfileLabel::fake: return "fake";
    case ProfileLabel::genuine: return "genuine";
    case ProfileLabel::mix: return "mix";
  }
  return "mix";
}

std::vector<std::string> feature_name_list() {
  return std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());
}

std::array<double, kFeatureCount> FeatureVector::to_array() const {
  return {photo_count,          review_count, useful_votes, reviewer_expertise,
          avg_gap,              avg_rating_deviation, first_review,
          reviewer_activity};
}

LabeledMatrix select_rows(const LabeledMatrix& m, std::span<const std::size_t> rows) {
  LabeledMatrix out;
  out.feature_names = m.feature_names;
  out.instance_ids.reserve(rows.size());
  out.labels.reserve(rows.size());
  out.values.reserve(rows.size() * m.width());
  for (std::size_t r : rows) {
    out.instance_ids.push_back(m.instance_ids[r]);
    out.labels.push_back(m.labels[r]);
    auto row = m.row(r);
    out.values.insert(out.values.end(), row.begin(), row.end());
  }
  return out;
}

LabeledMatrix select_columns(const LabeledMatrix& m, std::span<const std::size_t> columns) {
  LabeledMatrix out;
  out.instance_ids = m.instance_ids;
  out.labels = m.labels;
  for (std::size_t c : columns) out.feature_names.push_back(m.feature_names[c]);
  out.values.reserve(m.rows() * columns.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c : columns) out.values.push_back(m.at(r, c));
  return out;
}

namespace {

// Relative tolerance used when checking that stored business aggregates match
// the review list they were derived from.
bool close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::vector<Violation> validate_dataset(const Dataset& d) {
  std::vector<Violation> out;
  auto flag = [&out](std::string id, std::string rule, std::string detail) {
    out.push_back(Violation{std::move(id), std::move(rule), std::move(detail)});
  };

  std::set<std::string> seen_ids;
  struct Agg {
    double rating_sum = 0.0;
    std::size_t n = 0;
    double min_ts = 0.0;
  };
  std::unordered_map<std::string, Agg> per_business;

  for (const Review& r : d.reviews) {
    if (r.rating < 1 || r.rating > 5)
      flag(r.review_id, "rating out of range",
           "rating " + std::to_string(r.rating) + " outside [1,5]");
    if (r.timestamp < 0.0)
      flag(r.review_id, "negative timestamp", "timestamp must be >= 0");
    if (!seen_ids.insert(r.review_id).second)
      flag(r.review_id, "duplicate review id", "review_id occurs more than once");
    if (!d.profiles.contains(r.reviewer_id))
      flag(r.review_id, "unresolved reviewer",
           "reviewer_id " + r.reviewer_id + " has no profile");
    if (!d.businesses.empty() && !d.businesses.contains(r.business_id))
      flag(r.review_id, "unresolved business",
           "business_id " + r.business_id + " has no stats entry");

    Agg& agg = per_business[r.business_id];
    agg.rating_sum += r.rating;
    agg.min_ts = agg.n == 0 ? r.timestamp : std::min(agg.min_ts, r.timestamp);
    agg.n += 1;
  }

  for (const auto& [id, profile] : d.profiles) {
    if (profile.photo_count < 0)
      flag(id, "negative photo count", "photo_count must be >= 0");
    if (profile.useful_votes < 0)
      flag(id, "negative useful votes", "useful_votes must be >= 0");
    if (profile.registration_date < 0.0)
      flag(id, "negative registration date", "registration_date must be >= 0");
  }

  for (const auto& [id, stats] : d.businesses) {
    if (stats.avg_rating < 1.0 || stats.avg_rating > 5.0)
      flag(id, "avg rating out of range", "avg_rating outside [1,5]");
    auto it = per_business.find(id);
    if (it == per_business.end()) continue;  // no reviews, nothing to cross-check
    const Agg& agg = it->second;
    if (!close(stats.avg_rating, agg.rating_sum / static_cast<double>(agg.n)))
      flag(id, "avg rating mismatch",
           "stored avg_rating disagrees with the mean of this business's ratings");
    if (stats.first_review_time > agg.min_ts && !close(stats.first_review_time, agg.min_ts))
      flag(id, "first review time after review timestamp",
           "first_review_time exceeds one of this business's review timestamps");
  }

  return out;
}

}  // namespace crfdspam

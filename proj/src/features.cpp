#include "crfdspam/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "crfdspam/util.hpp"

namespace crfdspam {

ProfileFeatures profile_features(const ReviewerProfile& p, std::size_t review_count,
                                 double reference_date) {
  if (reference_date < p.registration_date)
    throw std::invalid_argument("profile_features: reference_date " +
                                std::to_string(reference_date) + " precedes registration of " +
                                p.reviewer_id);
  ProfileFeatures f;
  f.photo_count = static_cast<double>(p.photo_count);
  f.review_count = static_cast<double>(review_count);
  f.useful_votes = static_cast<double>(p.useful_votes);
  f.reviewer_expertise = reference_date - p.registration_date;
  return f;
}

double average_gap(std::span<const double> sorted_timestamps) {
  if (sorted_timestamps.empty())
    throw std::invalid_argument("average_gap: empty timestamp list");
  const std::size_t n = sorted_timestamps.size();
  if (n == 1) return 0.0;  // single-review convention
  double sum = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double gap = sorted_timestamps[j] - sorted_timestamps[j - 1];
    if (gap < 0.0) throw std::invalid_argument("average_gap: timestamps not sorted ascending");
    sum += gap;
  }
  return sum / static_cast<double>(n - 1);
}

double average_rating_deviation(std::span<const RatingObservation> reviews) {
  if (reviews.empty())
    throw std::invalid_argument("average_rating_deviation: empty review list");
  double sum = 0.0;
  for (const RatingObservation& r : reviews) {
    if (r.rating < 1.0 || r.rating > 5.0)
      throw std::invalid_argument("average_rating_deviation: rating outside [1,5]");
    sum += std::abs(r.rating - r.business_avg);
  }
  return sum / static_cast<double>(reviews.size());
}

double first_review_delay(std::span<const FirstReviewObservation> reviews) {
  if (reviews.empty())
    throw std::invalid_argument("first_review_delay: empty review list");
  double sum = 0.0;
  for (const FirstReviewObservation& r : reviews) {
    if (r.timestamp < r.business_first)
      throw std::invalid_argument(
          "first_review_delay: review timestamp precedes the business's first review");
    sum += r.timestamp - r.business_first;
  }
  return sum / static_cast<double>(reviews.size());
}

double activity_span(std::span<const double> timestamps) {
  if (timestamps.empty()) throw std::invalid_argument("activity_span: empty timestamp list");
  const auto [mn, mx] = std::minmax_element(timestamps.begin(), timestamps.end());
  return *mx - *mn;
}

namespace {

struct ReviewerSlice {
  std::vector<double> timestamps;  // sorted ascending
  std::vector<RatingObservation> ratings;
  std::vector<FirstReviewObservation> first_reviews;
};

FeatureVector features_from_slice(const ReviewerProfile& profile, const ReviewerSlice& slice,
                                  double reference_date) {
  FeatureVector fv;
  const ProfileFeatures pf =
      profile_features(profile, slice.timestamps.size(), reference_date);
  fv.photo_count = pf.photo_count;
  fv.review_count = pf.review_count;
  fv.useful_votes = pf.useful_votes;
  fv.reviewer_expertise = pf.reviewer_expertise;
  fv.avg_gap = average_gap(slice.timestamps);
  fv.avg_rating_deviation = average_rating_deviation(slice.ratings);
  fv.first_review = first_review_delay(slice.first_reviews);
  fv.reviewer_activity = activity_span(slice.timestamps);
  return fv;
}

}  // namespace

FeatureVector reviewer_features(const Dataset& d, const std::string& reviewer_id,
                                double reference_date) {
  auto pit = d.profiles.find(reviewer_id);
  if (pit == d.profiles.end())
    throw std::invalid_argument("reviewer_features: no profile for " + reviewer_id);
  ReviewerSlice slice;
  for (const Review& r : d.reviews) {
    if (r.reviewer_id != reviewer_id) continue;
    auto bit = d.businesses.find(r.business_id);
    if (bit == d.businesses.end())
      throw std::invalid_argument("reviewer_features: business stats missing for " +
                                  r.business_id + " (derive_business_stats not run?)");
    slice.timestamps.push_back(r.timestamp);
    slice.ratings.push_back({static_cast<double>(r.rating), bit->second.avg_rating});
    slice.first_reviews.push_back({r.timestamp, bit->second.first_review_time});
  }
  if (slice.timestamps.empty())
    throw std::invalid_argument("reviewer_features: reviewer " + reviewer_id +
                                " has no reviews");
  std::sort(slice.timestamps.begin(), slice.timestamps.end());
  return features_from_slice(pit->second, slice, reference_date);
}

LabeledMatrix build_matrix(const Dataset& d, const MatrixOptions& options) {
  if (d.reviews.empty()) throw std::invalid_argument("build_matrix: dataset has no reviews");
  if (d.businesses.empty())
    throw std::invalid_argument("build_matrix: business stats not derived");

  double reference = 0.0;
  if (options.reference_date) {
    reference = *options.reference_date;
  } else {
    reference = d.reviews.front().timestamp;
    for (const Review& r : d.reviews) reference = std::max(reference, r.timestamp);
  }

  // Gather per-reviewer slices in one pass.
  std::unordered_map<std::string, ReviewerSlice> slices;
  for (const Review& r : d.reviews) {
    auto bit = d.businesses.find(r.business_id);
    if (bit == d.businesses.end())
      throw std::invalid_argument("build_matrix: business stats missing for " + r.business_id);
    ReviewerSlice& slice = slices[r.reviewer_id];
    slice.timestamps.push_back(r.timestamp);
    slice.ratings.push_back({static_cast<double>(r.rating), bit->second.avg_rating});
    slice.first_reviews.push_back({r.timestamp, bit->second.first_review_time});
  }

  // Features are computed once per reviewer; rows of the same reviewer are
  // copies of the same array, hence bit-identical.
  std::unordered_map<std::string, std::array<double, kFeatureCount>> features;
  std::unordered_map<std::string, int> row_labels;
  for (auto& [reviewer_id, slice] : slices) {
    auto pit = d.profiles.find(reviewer_id);
    if (pit == d.profiles.end())
      throw std::invalid_argument("build_matrix: no profile for reviewer " + reviewer_id);
    const ReviewerProfile& profile = pit->second;
    if (!profile.label)
      throw std::invalid_argument("build_matrix: reviewer " + reviewer_id +
                                  " is untagged (run tag_reviewers first)");
    if (*profile.label == ProfileLabel::mix)
      throw std::invalid_argument("build_matrix: reviewer " + reviewer_id +
                                  " is tagged mix and should have been dropped");
    std::sort(slice.timestamps.begin(), slice.timestamps.end());
    try {
      features[reviewer_id] = features_from_slice(profile, slice, reference).to_array();
    } catch (const std::exception& e) {
      throw std::invalid_argument("build_matrix: reviewer " + reviewer_id + ": " + e.what());
    }
    row_labels[reviewer_id] =
        *profile.label == ProfileLabel::fake ? kLabelFake : kLabelNonFake;
  }

  LabeledMatrix m;
  m.feature_names = feature_name_list();
  if (options.group_by_reviewer) {
    std::vector<std::string> reviewer_ids;
    reviewer_ids.reserve(features.size());
    for (const auto& [id, _] : features) reviewer_ids.push_back(id);
    std::sort(reviewer_ids.begin(), reviewer_ids.end());
    for (const std::string& id : reviewer_ids) {
      m.instance_ids.push_back(id);
      m.labels.push_back(row_labels[id]);
      const auto& arr = features[id];
      m.values.insert(m.values.end(), arr.begin(), arr.end());
    }
  } else {
    std::vector<const Review*> ordered;
    ordered.reserve(d.reviews.size());
    for (const Review& r : d.reviews) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const Review* a, const Review* b) { return a->review_id < b->review_id; });
    for (const Review* r : ordered) {
      m.instance_ids.push_back(r->review_id);
      m.labels.push_back(row_labels[r->reviewer_id]);
      const auto& arr = features[r->reviewer_id];
      m.values.insert(m.values.end(), arr.begin(), arr.end());
    }
  }
  return m;
}

void write_matrix_csv(const LabeledMatrix& m, const std::filesystem::path& path) {
  std::string out = "instance_id";
  for (const std::string& name : m.feature_names) out += "," + name;
  out += ",label\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += util::csv_escape(m.instance_ids[i]);
    for (std::size_t j = 0; j < m.width(); ++j) {
      out += ',';
      out += util::format_double(m.at(i, j));
    }
    out += ',';
    out += std::to_string(m.labels[i]);
    out += '\n';
  }
  util::write_file_atomic(path, out);
}

}  // namespace crfdspam

#ifndef CRFDSPAM_TYPES_HPP_
#define CRFDSPAM_TYPES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Core domain records shared by every other component. All time quantities
// are fractional days since 1970-01-01; ingestion converts calendar dates.
// Everything here is a plain value type, immutable by convention after
// construction, so instances can be shared freely across threads.

namespace crfdspam {

enum class ReviewLabel { fake, non_fake, unknown };
enum class ProfileLabel { fake, genuine, mix };

const char* to_string(ReviewLabel label);
const char* to_string(ProfileLabel label);

struct Review {
  std::string review_id;
  std::string reviewer_id;
  std::string business_id;
  int rating = 0;          // stars, 1..5
  double timestamp = 0.0;  // days since epoch, >= 0
  ReviewLabel label = ReviewLabel::unknown;

  friend bool operator==(const Review&, const Review&) = default;
};

struct ReviewerProfile {
  std::string reviewer_id;
  std::int64_t photo_count = 0;
  std::int64_t useful_votes = 0;
  double registration_date = 0.0;  // days since epoch
  // Unset until tag_reviewers() has run.
  std::optional<ProfileLabel> label;

  friend bool operator==(const ReviewerProfile&, const ReviewerProfile&) = default;
};

// Per-business aggregates. Derived from the reviews actually present in the
// dataset, so both fields are redundant with the review list and are checked
// against it by validate_dataset().
struct BusinessStats {
  std::string business_id;
  double avg_rating = 0.0;         // arithmetic mean of this business's ratings
  double first_review_time = 0.0;  // min timestamp among this business's reviews

  friend bool operator==(const BusinessStats&, const BusinessStats&) = default;
};

struct Dataset {
  std::vector<Review> reviews;
  std::map<std::string, ReviewerProfile> profiles;
  // Empty until derive_business_stats() has run.
  std::map<std::string, BusinessStats> businesses;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

inline constexpr std::size_t kFeatureCount = 8;

// Canonical column order for every matrix produced by this library.
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "photo_count",      "review_count", "useful_votes", "reviewer_expertise",
    "avg_gap",          "avg_rating_deviation", "first_review", "reviewer_activity"};

std::vector<std::string> feature_name_list();

// The eight reviewer-centric features of one instance. Time-based fields are
// in days.
struct FeatureVector {
  double photo_count = 0.0;
  double review_count = 0.0;
  double useful_votes = 0.0;
  double reviewer_expertise = 0.0;
  double avg_gap = 0.0;
  double avg_rating_deviation = 0.0;
  double first_review = 0.0;
  double reviewer_activity = 0.0;

  std::array<double, kFeatureCount> to_array() const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Label encoding is fixed across the project: fake = 0 (the positive class),
// non-fake = 1.
inline constexpr int kLabelFake = 0;
inline constexpr int kLabelNonFake = 1;

// Row-major feature matrix with per-row instance ids and binary labels.
struct LabeledMatrix {
  std::vector<std::string> instance_ids;
  std::vector<std::string> feature_names;
  std::vector<double> values;  // rows() * width(), row-major
  std::vector<int> labels;     // 0 = fake, 1 = non_fake

  std::size_t rows() const { return instance_ids.size(); }
  std::size_t width() const { return feature_names.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values).subspan(i * width(), width());
  }
  double at(std::size_t i, std::size_t j) const { return values[i * width() + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * width() + j]; }

  friend bool operator==(const LabeledMatrix&, const LabeledMatrix&) = default;
};

LabeledMatrix select_rows(const LabeledMatrix& m, std::span<const std::size_t> rows);
LabeledMatrix select_columns(const LabeledMatrix& m, std::span<const std::size_t> columns);

// One broken invariant. Violations are data, not failures: validate_dataset
// never throws on bad content.
struct Violation {
  std::string instance_id;
  std::string rule;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Checks every type invariant of the dataset: rating and timestamp ranges,
// non-negative profile counters, id resolution, review-id uniqueness, and
// consistency of derived business stats with the review list. Business
// checks are skipped while the businesses map is still empty (stats not yet
// derived). Pure and idempotent.
std::vector<Violation> validate_dataset(const Dataset& d);

}  // namespace crfdspam

#endif  // CRFDSPAM_TYPES_HPP_

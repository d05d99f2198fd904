#ifndef CRFDSPAM_FEATURES_HPP_
#define CRFDSPAM_FEATURES_HPP_

#include <filesystem>
#include <optional>
#include <span>

#include "crfdspam/types.hpp"

// Extraction of the eight reviewer-centric features and assembly of the
// labeled matrix. All per-reviewer computations are pure functions of the
// reviewer's slice of the dataset, so callers may parallelize across
// reviewers.

namespace crfdspam {

struct ProfileFeatures {
  double photo_count = 0.0;
  double review_count = 0.0;
  double useful_votes = 0.0;
  double reviewer_expertise = 0.0;  // days since registration at reference_date
};

// Throws if reference_date precedes the registration date.
ProfileFeatures profile_features(const ReviewerProfile& p, std::size_t review_count,
                                 double reference_date);

// Mean gap in days between consecutive reviews. Input must be sorted
// ascending and non-empty. A single review has no gap; by convention the
// result is 0 in that case.
double average_gap(std::span<const double> sorted_timestamps);

struct RatingObservation {
  double rating;        // this reviewer's rating, 1..5
  double business_avg;  // the reviewed business's average rating
};

// Mean absolute deviation of the reviewer's ratings from the businesses'
// average ratings.
double average_rating_deviation(std::span<const RatingObservation> reviews);

struct FirstReviewObservation {
  double timestamp;       // when the reviewer posted
  double business_first;  // when the business received its first review
};

// Mean delay in days between each review and the first review of the same
// business. Throws if any timestamp precedes its business's first review.
double first_review_delay(std::span<const FirstReviewObservation> reviews);

// Days between the reviewer's first and last review (0 for a single review).
double activity_span(std::span<const double> timestamps);

struct MatrixOptions {
  // Reference day for reviewer_expertise; defaults to the maximum review
  // timestamp in the dataset.
  std::optional<double> reference_date;
  // One row per reviewer instead of one row per review.
  bool group_by_reviewer = false;
};

// Computes all eight features for one reviewer from the dataset.
FeatureVector reviewer_features(const Dataset& d, const std::string& reviewer_id,
                                double reference_date);

// Builds the labeled matrix. Default granularity is one row per review, each
// carrying its reviewer's features, ordered by review_id; with
// group_by_reviewer one row per reviewer, ordered by reviewer_id. Requires a
// tagged dataset (no mix profiles, no unknown labels) with derived business
// stats.
LabeledMatrix build_matrix(const Dataset& d, const MatrixOptions& options = {});

void write_matrix_csv(const LabeledMatrix& m, const std::filesystem::path& path);

}  // namespace crfdspam

#endif  // CRFDSPAM_FEATURES_HPP_

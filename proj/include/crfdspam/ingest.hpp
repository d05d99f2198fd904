#ifndef CRFDSPAM_INGEST_HPP_
#define CRFDSPAM_INGEST_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "crfdspam/types.hpp"

// File ingestion, reviewer tagging, and per-business statistics. All
// operations are pure transformations on immutable inputs.
//
// Accepted formats, chosen by file extension:
//   *.csv             header required, columns by name
//   *.jsonl / *.ndjson / *.json   one JSON object per line, same field names
//
// reviews:  review_id,reviewer_id,business_id,rating,timestamp,label
//           with label in {fake, non_fake}; timestamp either an ISO-8601
//           date (YYYY-MM-DD) or a fractional day number since 1970-01-01.
// profiles: reviewer_id,photo_count,useful_votes,registration_date
//           with registration_date in the same two forms.

namespace crfdspam {

// Parses both files into a Dataset (business stats not yet derived). Reviews
// whose reviewer has no profile row are dropped with a warning appended to
// *warnings. Throws on malformed fields (with file:line locus), missing
// schema columns, and duplicate review ids.
Dataset load_dataset(const std::filesystem::path& reviews_path,
                     const std::filesystem::path& profiles_path,
                     std::vector<std::string>* warnings = nullptr);

struct TagStats {
  std::size_t fake_reviewers = 0;
  std::size_t genuine_reviewers = 0;
  std::size_t mix_reviewers = 0;
  std::size_t dropped_reviews = 0;  // reviews of mix reviewers

  double fake_fraction() const;
  double genuine_fraction() const;
  double mix_fraction() const;
};

struct TagResult {
  Dataset dataset;
  TagStats stats;
};

// Labels each profile fake iff all of its reviews are fake, genuine iff all
// are non-fake, mix otherwise; mix reviewers are removed together with their
// reviews. Requires every review to carry a fake/non-fake label and every
// profile to have at least one review ("unreviewable profile" otherwise).
// Idempotent on the dataset.
TagResult tag_reviewers(const Dataset& d);

// Rebuilds the businesses map from the reviews: avg_rating is the mean rating
// and first_review_time the minimum timestamp of each referenced business.
// Reviews and profiles are left untouched. The average includes the
// reviewer's own review (no leave-one-out); a leave-one-out variant would
// slot in here behind a flag.
Dataset derive_business_stats(const Dataset& d);

// Writes the two-file CSV form read by load_dataset. Timestamps are written
// as shortest round-trip day numbers, so load(write(d)) reproduces d exactly
// (up to re-derived profile labels and business stats).
void write_reviews_csv(const Dataset& d, const std::filesystem::path& path);
void write_profiles_csv(const Dataset& d, const std::filesystem::path& path);

// Days since 1970-01-01 for an ISO-8601 calendar date.
double days_from_iso_date(const std::string& iso);

}  // namespace crfdspam

#endif  // CRFDSPAM_INGEST_HPP_

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "crfdspam/features.hpp"
#include "crfdspam/ingest.hpp"
#include "crfdspam/rng.hpp"

using namespace crfdspam;

namespace {

// Two tagged reviewers, three reviews each, stats derived.
Dataset two_reviewer_dataset() {
  Dataset d;
  d.reviews = {
      {"r1", "u1", "b1", 5, 10.0, ReviewLabel::fake},
      {"r2", "u1", "b1", 5, 12.0, ReviewLabel::fake},
      {"r3", "u1", "b2", 1, 20.0, ReviewLabel::fake},
      {"r4", "u2", "b1", 3, 15.0, ReviewLabel::non_fake},
      {"r5", "u2", "b2", 4, 115.0, ReviewLabel::non_fake},
      {"r6", "u2", "b2", 4, 215.0, ReviewLabel::non_fake},
  };
  d.profiles["u1"] = {"u1", 0, 1, 5.0, ProfileLabel::fake};
  d.profiles["u2"] = {"u2", 7, 40, 0.0, ProfileLabel::genuine};
  return derive_business_stats(d);
}

}  // namespace

TEST_SUITE("features") {

TEST_CASE("profile features") {
  ReviewerProfile p{"u", 5, 7, 0.0, ProfileLabel::genuine};
  const ProfileFeatures f = profile_features(p, 12, 3650.0);
  CHECK(f.photo_count == 5.0);
  CHECK(f.useful_votes == 7.0);
  CHECK(f.review_count == 12.0);
  CHECK(f.reviewer_expertise == 3650.0);

  p.registration_date = 100.0;
  CHECK_THROWS_AS(profile_features(p, 1, 99.0), std::invalid_argument);
}

TEST_CASE("average gap") {
  CHECK(average_gap(std::vector<double>{0, 5}) == 5.0);
  CHECK(average_gap(std::vector<double>{0, 2, 10}) == 5.0);  // (2 + 8) / 2
  CHECK(average_gap(std::vector<double>{7}) == 0.0);
  CHECK_THROWS_AS(average_gap({}), std::invalid_argument);
  CHECK_THROWS_AS(average_gap(std::vector<double>{3, 1}), std::invalid_argument);
}

TEST_CASE("average gap telescopes to (max-min)/(N-1)") {
  Rng rng(3u);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(40);
    std::vector<double> ts(n);
    for (double& t : ts) t = rng.uniform(0.0, 1000.0);
    std::sort(ts.begin(), ts.end());
    const double direct = average_gap(ts);
    const double telescoped = (ts.back() - ts.front()) / static_cast<double>(n - 1);
    CHECK(direct == doctest::Approx(telescoped).epsilon(1e-9));
  }
}

TEST_CASE("average rating deviation") {
  CHECK(average_rating_deviation(std::vector<RatingObservation>{{3, 3.0}, {4, 4.0}}) == 0.0);
  CHECK(average_rating_deviation(std::vector<RatingObservation>{{5, 3.0}, {1, 3.0}}) == 2.0);
  CHECK(average_rating_deviation(std::vector<RatingObservation>{{1, 5.0}}) == 4.0);
  CHECK_THROWS_AS(average_rating_deviation({}), std::invalid_argument);
}

TEST_CASE("rating deviation stays within [0,4] on a 1-5 scale") {
  Rng rng(5u);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RatingObservation> obs(1 + rng.below(20));
    for (auto& o : obs) {
      o.rating = 1.0 + static_cast<double>(rng.below(5));
      o.business_avg = rng.uniform(1.0, 5.0);
    }
    const double ard = average_rating_deviation(obs);
    CHECK(ard >= 0.0);
    CHECK(ard <= 4.0);
  }
}

TEST_CASE("first review delay") {
  CHECK(first_review_delay(std::vector<FirstReviewObservation>{{10, 10}}) == 0.0);
  CHECK(first_review_delay(std::vector<FirstReviewObservation>{{10, 0}, {20, 5}}) == 12.5);
  CHECK(first_review_delay(std::vector<FirstReviewObservation>{{5, 0}, {5, 0}}) == 5.0);
  CHECK_THROWS_AS(first_review_delay({}), std::invalid_argument);
  CHECK_THROWS_AS(first_review_delay(std::vector<FirstReviewObservation>{{5, 6}}),
                  std::invalid_argument);
}

TEST_CASE("activity span") {
  CHECK(activity_span(std::vector<double>{3, 100}) == 97.0);
  CHECK(activity_span(std::vector<double>{42}) == 0.0);
  CHECK(activity_span(std::vector<double>{0, 50, 10}) == 50.0);
  CHECK_THROWS_AS(activity_span({}), std::invalid_argument);
}

TEST_CASE("build_matrix: one row per review, reviewer rows identical") {
  const Dataset d = two_reviewer_dataset();
  const LabeledMatrix m = build_matrix(d);
  REQUIRE(m.rows() == 6);
  CHECK(m.width() == kFeatureCount);
  CHECK(m.feature_names == feature_name_list());
  // Ordered by review id, labels follow the reviewer.
  CHECK(m.instance_ids ==
        std::vector<std::string>{"r1", "r2", "r3", "r4", "r5", "r6"});
  CHECK(m.labels == std::vector<int>{0, 0, 0, 1, 1, 1});
  // Rows of the same reviewer are bit-identical.
  for (std::size_t c = 0; c < kFeatureCount; ++c) {
    CHECK(m.at(0, c) == m.at(1, c));
    CHECK(m.at(0, c) == m.at(2, c));
    CHECK(m.at(3, c) == m.at(4, c));
  }

  // Spot-check u1's values: b1 avg (5+5+3)/3, b2 avg (1+4+4)/3.
  const double b1_avg = 13.0 / 3.0;
  const double b2_avg = 9.0 / 3.0;
  const double reference = 215.0;  // max timestamp
  CHECK(m.at(0, 0) == 0.0);                          // photo_count
  CHECK(m.at(0, 1) == 3.0);                          // review_count
  CHECK(m.at(0, 2) == 1.0);                          // useful_votes
  CHECK(m.at(0, 3) == reference - 5.0);              // expertise
  CHECK(m.at(0, 4) == doctest::Approx(5.0));         // avg gap (2+8)/2
  CHECK(m.at(0, 5) ==
        doctest::Approx((std::abs(5 - b1_avg) * 2 + std::abs(1 - b2_avg)) / 3.0));
  CHECK(m.at(0, 6) == doctest::Approx((0.0 + 2.0 + 0.0) / 3.0));  // first review delays
  CHECK(m.at(0, 7) == 10.0);                         // activity
}

TEST_CASE("build_matrix: group by reviewer") {
  const Dataset d = two_reviewer_dataset();
  MatrixOptions opt;
  opt.group_by_reviewer = true;
  const LabeledMatrix m = build_matrix(d, opt);
  REQUIRE(m.rows() == 2);
  CHECK(m.instance_ids == std::vector<std::string>{"u1", "u2"});
  CHECK(m.labels == std::vector<int>{0, 1});
}

TEST_CASE("build_matrix: single-review reviewer gets zero gap and activity") {
  Dataset d;
  d.reviews = {{"r1", "u1", "b1", 4, 7.0, ReviewLabel::non_fake}};
  d.profiles["u1"] = {"u1", 1, 2, 0.0, ProfileLabel::genuine};
  d = derive_business_stats(d);
  const LabeledMatrix m = build_matrix(d);
  REQUIRE(m.rows() == 1);
  CHECK(m.at(0, 4) == 0.0);  // avg_gap
  CHECK(m.at(0, 7) == 0.0);  // reviewer_activity
}

TEST_CASE("build_matrix rejects untagged and mix reviewers") {
  Dataset d = two_reviewer_dataset();
  d.profiles["u1"].label.reset();
  CHECK_THROWS_WITH_AS(build_matrix(d), doctest::Contains("untagged"), std::invalid_argument);
  d.profiles["u1"].label = ProfileLabel::mix;
  CHECK_THROWS_WITH_AS(build_matrix(d), doctest::Contains("mix"), std::invalid_argument);
}

TEST_CASE("build_matrix wraps feature errors with the reviewer id") {
  Dataset d = two_reviewer_dataset();
  d.profiles["u1"].registration_date = 1e9;  // reference < registration
  CHECK_THROWS_WITH_AS(build_matrix(d), doctest::Contains("u1"), std::invalid_argument);
}

TEST_CASE("features are invariant under a common time shift") {
  const Dataset d = two_reviewer_dataset();
  const LabeledMatrix before = build_matrix(d);

  const double shift = 1234.0;
  Dataset shifted = d;
  for (Review& r : shifted.reviews) r.timestamp += shift;
  for (auto& [id, p] : shifted.profiles) p.registration_date += shift;
  shifted = derive_business_stats(shifted);  // first_review_time moves with it
  MatrixOptions opt;
  opt.reference_date = 215.0 + shift;
  const LabeledMatrix after = build_matrix(shifted, opt);

  for (std::size_t r = 0; r < before.rows(); ++r)
    for (std::size_t c = 0; c < before.width(); ++c)
      CHECK(before.at(r, c) == doctest::Approx(after.at(r, c)).epsilon(1e-12));
}

TEST_CASE("matrix CSV has one line per row plus header") {
  const Dataset d = two_reviewer_dataset();
  const LabeledMatrix m = build_matrix(d);
  const auto path = std::filesystem::temp_directory_path() / "crfdspam_matrix_test.csv";
  write_matrix_csv(m, path);
  std::ifstream in(path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == m.rows() + 1);
  std::filesystem::remove(path);
}

}  // TEST_SUITE

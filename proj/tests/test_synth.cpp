#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <vector>

#include "crfdspam/features.hpp"
#include "crfdspam/ingest.hpp"
#include "crfdspam/synth.hpp"

using namespace crfdspam;

TEST_SUITE("synthetic_data") {

TEST_CASE("fake reviewer count follows the rounded ratio") {
  SynthConfig config;
  config.n_reviewers = 1000;
  config.fake_ratio = 0.13;
  config.seed = 3;
  const Dataset d = generate(config);
  std::size_t fakes = 0;
  for (const auto& [id, p] : d.profiles)
    if (p.label == ProfileLabel::fake) ++fakes;
  CHECK(fakes == 130);
  CHECK(d.profiles.size() == 1000);
}

TEST_CASE("same seed generates a bit-identical dataset") {
  SynthConfig config;
  config.n_reviewers = 200;
  config.seed = 99;
  const Dataset a = generate(config);
  const Dataset b = generate(config);
  CHECK(a == b);

  config.seed = 100;
  const Dataset c = generate(config);
  CHECK(a != c);
}

TEST_CASE("parameter bounds are enforced") {
  SynthConfig config;
  config.fake_ratio = 0.0;
  CHECK_THROWS_AS(generate(config), std::invalid_argument);
  config.fake_ratio = 1.0;
  CHECK_THROWS_AS(generate(config), std::invalid_argument);
  config.fake_ratio = 0.13;
  config.zipf_exponent = 1.0;
  CHECK_THROWS_AS(generate(config), std::invalid_argument);
  config.zipf_exponent = 1.2;
  config.n_reviewers = 19;
  CHECK_THROWS_AS(generate(config), std::invalid_argument);
}

TEST_CASE("generated datasets validate and survive tagging untouched") {
  SynthConfig config;
  config.n_reviewers = 300;
  config.seed = 17;
  const Dataset d = generate(config);
  CHECK(validate_dataset(d).empty());
  const TagResult tagged = tag_reviewers(d);
  CHECK(tagged.stats.mix_reviewers == 0);
  CHECK(tagged.stats.dropped_reviews == 0);
  CHECK(tagged.dataset == d);
}

TEST_CASE("photo-count frequencies decrease over the first ten values") {
  SynthConfig config;
  config.n_reviewers = 12000;
  config.seed = 42;
  const Dataset d = generate(config);
  std::map<std::int64_t, std::size_t> freq;
  for (const auto& [id, p] : d.profiles) ++freq[p.photo_count];
  for (std::int64_t v = 0; v + 1 < 10; ++v) {
    REQUIRE(freq.contains(v));
    REQUIRE(freq.contains(v + 1));
    CHECK(freq[v] > freq[v + 1]);
  }
}

TEST_CASE("fake reviewers burst while genuine reviewers persist") {
  for (std::uint64_t seed : {1u, 7u, 42u, 1234u}) {
    SynthConfig config;
    config.n_reviewers = 1000;
    config.seed = seed;
    const Dataset d = generate(config);

    std::map<std::string, std::pair<double, double>> span;  // min, max per reviewer
    std::map<std::string, std::size_t> count;
    for (const Review& r : d.reviews) {
      auto [it, fresh] = span.try_emplace(r.reviewer_id, r.timestamp, r.timestamp);
      if (!fresh) {
        it->second.first = std::min(it->second.first, r.timestamp);
        it->second.second = std::max(it->second.second, r.timestamp);
      }
      ++count[r.reviewer_id];
    }
    double fake_sum = 0.0, genuine_sum = 0.0;
    std::size_t fake_n = 0, genuine_n = 0;
    for (const auto& [id, p] : d.profiles) {
      const double s = span.at(id).second - span.at(id).first;
      if (p.label == ProfileLabel::fake) {
        fake_sum += s;
        ++fake_n;
      } else {
        genuine_sum += s;
        ++genuine_n;
      }
    }
    CHECK(fake_sum / fake_n < genuine_sum / genuine_n);
  }
}

TEST_CASE("summary moments: constant and two-value columns") {
  // Two reviewers, one review each, ratings equal to the business mean
  // (ARD 0), photo counts constant, useful votes {0, 10} equally frequent.
  Dataset d;
  d.reviews = {
      {"r1", "u1", "b1", 3, 0.0, ReviewLabel::non_fake},
      {"r2", "u2", "b1", 3, 10.0, ReviewLabel::non_fake},
  };
  d.profiles["u1"] = {"u1", 4, 0, 0.0, ProfileLabel::genuine};
  d.profiles["u2"] = {"u2", 4, 10, 0.0, ProfileLabel::genuine};
  d = derive_business_stats(d);
  const FeatureMoments moments = summarize(d);
  CHECK(moments.mean[0] == 4.0);  // photo_count constant
  CHECK(moments.std_dev[0] == 0.0);
  // useful_votes rows are {0, 10} -> mean 5, population std 5.
  CHECK(moments.mean[2] == 5.0);
  CHECK(moments.std_dev[2] == 5.0);
  // avg_rating_deviation identically 0.
  CHECK(moments.mean[5] == 0.0);
  CHECK(moments.std_dev[5] == 0.0);
}

TEST_CASE("generator defaults give finite, non-negative moments") {
  SynthConfig config;
  config.n_reviewers = 400;
  config.seed = 8;
  const Dataset d = generate(config);
  const FeatureMoments moments = summarize(d);
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    CHECK(std::isfinite(moments.mean[i]));
    CHECK(std::isfinite(moments.std_dev[i]));
    CHECK(moments.mean[i] >= 0.0);
  }
}

TEST_CASE("dataset round-trips through the ingestion CSV schema") {
  SynthConfig config;
  config.n_reviewers = 150;
  config.seed = 21;
  const Dataset d = generate(config);

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "crfdspam_synth_roundtrip";
  fs::create_directories(dir);
  write_reviews_csv(d, dir / "reviews.csv");
  write_profiles_csv(d, dir / "profiles.csv");
  const Dataset loaded = load_dataset(dir / "reviews.csv", dir / "profiles.csv");
  const Dataset rebuilt = derive_business_stats(tag_reviewers(loaded).dataset);
  CHECK(rebuilt == d);
  fs::remove_all(dir);
}

}  // TEST_SUITE

#include "crfdspam/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crfdspam/features.hpp"
#include "crfdspam/ingest.hpp"
#include "crfdspam/rng.hpp"

namespace crfdspam {

namespace {

std::string padded_id(const char* prefix, std::size_t i, int width) {
  std::string digits = std::to_string(i);
  if (static_cast<int>(digits.size()) < width)
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  return prefix + digits;
}

void check_config(const SynthConfig& c) {
  if (!(c.fake_ratio > 0.0 && c.fake_ratio < 1.0))
    throw std::invalid_argument("generate: fake_ratio must lie in (0,1)");
  if (!(c.zipf_exponent > 1.0))
    throw std::invalid_argument("generate: zipf_exponent must be > 1");
  if (c.n_reviewers < 20)
    throw std::invalid_argument("generate: n_reviewers must be >= 20");
  if (c.reviews_per_reviewer.first < 1 ||
      c.reviews_per_reviewer.first > c.reviews_per_reviewer.second)
    throw std::invalid_argument("generate: invalid reviews_per_reviewer range");
  if (!(c.horizon_days > c.genuine_span_min))
    throw std::invalid_argument("generate: horizon_days too small for the genuine span regime");
  if (!(c.span_regime_probability >= 0.0 && c.span_regime_probability <= 1.0))
    throw std::invalid_argument("generate: span_regime_probability must lie in [0,1]");
}

}  // namespace

Dataset generate(const SynthConfig& config) {
  check_config(config);
  Rng rng(config.seed);

  const std::size_t n_fake =
      static_cast<std::size_t>(std::llround(config.fake_ratio *
                                            static_cast<double>(config.n_reviewers)));
  const std::size_t n_businesses =
      config.n_businesses > 0 ? config.n_businesses
                              : std::max<std::size_t>(20, config.n_reviewers / 2);

  const std::size_t count_range =
      config.reviews_per_reviewer.second - config.reviews_per_reviewer.first + 1;
  const ZipfSampler review_count_sampler(std::min(config.zipf_max_rank, count_range),
                                         config.zipf_exponent);
  const ZipfSampler genuine_count_sampler(config.zipf_max_rank, config.zipf_exponent);
  // Spammer profiles sit even more heavily at zero photos/votes.
  const ZipfSampler fake_count_sampler(config.zipf_max_rank, config.zipf_exponent + 0.8);
  const ZipfSampler business_sampler(n_businesses, config.zipf_exponent);

  // Latent per-business quality that both populations rate against.
  std::vector<double> quality(n_businesses);
  for (double& q : quality) q = rng.uniform(1.6, 4.4);

  Dataset d;
  std::size_t review_counter = 0;
  for (std::size_t i = 0; i < config.n_reviewers; ++i) {
    const bool fake = i < n_fake;

    ReviewerProfile profile;
    profile.reviewer_id = padded_id("user", i, 6);
    profile.label = fake ? ProfileLabel::fake : ProfileLabel::genuine;

    const std::size_t review_count =
        config.reviews_per_reviewer.first + (review_count_sampler.sample(rng) - 1);

    // Activity span: fakes burst, genuine reviewers stay around.
    double span = 0.0;
    if (review_count >= 2) {
      if (fake) {
        span = rng.bernoulli(config.span_regime_probability)
                   ? rng.uniform(1.0, config.fake_span_limit)
                   : rng.uniform(config.fake_span_limit, config.fake_span_limit * 6.0);
      } else {
        span = rng.bernoulli(config.span_regime_probability)
                   ? rng.uniform(config.genuine_span_min, config.horizon_days * 0.9)
                   : rng.uniform(5.0, config.genuine_span_min);
      }
      span = std::min(span, config.horizon_days - 1.0);
    }
    const double start = rng.uniform(0.0, config.horizon_days - span);

    // Fake accounts are freshly registered; genuine ones are longtime members.
    const double membership_lead =
        fake ? rng.uniform(0.0, 60.0) : rng.uniform(100.0, 2000.0);
    profile.registration_date = std::max(0.0, start - membership_lead);

    const ZipfSampler& profile_sampler = fake ? fake_count_sampler : genuine_count_sampler;
    profile.photo_count = static_cast<std::int64_t>(profile_sampler.sample(rng) - 1);
    std::int64_t votes = static_cast<std::int64_t>(profile_sampler.sample(rng) - 1);
    if (!fake) {
      // Long-lived accounts accumulate extra votes roughly with their output.
      votes += static_cast<std::int64_t>(rng.below(2 * review_count + 1));
    }
    profile.useful_votes = votes;

    for (std::size_t jr = 0; jr < review_count; ++jr) {
      Review r;
      r.review_id = padded_id("rev", review_counter++, 8);
      r.reviewer_id = profile.reviewer_id;
      const std::size_t b = business_sampler.sample(rng) - 1;
      r.business_id = padded_id("biz", b, 6);
      if (review_count == 1)
        r.timestamp = start;
      else if (jr == 0)
        r.timestamp = start;
      else if (jr == review_count - 1)
        r.timestamp = start + span;
      else
        r.timestamp = rng.uniform(start, start + span);

      double deviation = 0.0;
      if (fake) {
        const double magnitude = 1.2 + std::abs(rng.normal(0.0, 0.8));
        deviation = rng.bernoulli(0.5) ? magnitude : -magnitude;
      } else {
        deviation = rng.normal(0.0, 0.7);
      }
      const long stars = std::lround(quality[b] + deviation);
      r.rating = static_cast<int>(std::clamp(stars, 1L, 5L));
      r.label = fake ? ReviewLabel::fake : ReviewLabel::non_fake;
      d.reviews.push_back(std::move(r));
    }
    d.profiles.emplace(profile.reviewer_id, std::move(profile));
  }

  return derive_business_stats(d);
}

FeatureMoments summarize(const Dataset& d) {
  if (d.reviews.empty()) throw std::invalid_argument("summarize: empty dataset");
  const LabeledMatrix m = build_matrix(d);
  FeatureMoments moments;
  const double n = static_cast<double>(m.rows());
  for (std::size_t c = 0; c < kFeatureCount; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) mean += m.at(r, c);
    mean /= n;
    double var = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const double diff = m.at(r, c) - mean;
      var += diff * diff;
    }
    moments.mean[c] = mean;
    moments.std_dev[c] = std::sqrt(var / n);
  }
  return moments;
}

}  // namespace crfdspam

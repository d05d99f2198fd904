#ifndef CRFDSPAM_SYNTH_HPP_
#define CRFDSPAM_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <utility>

#include "crfdspam/types.hpp"

// Seeded generator of desk-scale datasets whose feature distributions follow
// the power-law and behavioral structure reported for real review data:
// count-like features are Zipf-distributed, fake reviewers post in short
// bursts and deviate further from business averages, genuine reviewers stay
// active for long stretches. Calibration constants are declared defaults, not
// reconstructions of any real dataset.

namespace crfdspam {

struct SynthConfig {
  std::size_t n_reviewers = 2000;
  std::pair<std::size_t, std::size_t> reviews_per_reviewer = {1, 30};
  double fake_ratio = 0.13;
  double zipf_exponent = 1.2;
  std::uint64_t seed = 42;

  std::size_t n_businesses = 0;  // 0 = max(20, n_reviewers / 2)
  double horizon_days = 5000.0;  // reviews fall in [0, horizon_days]

  // Behavioral calibration: activity spans in days and the probability mass
  // placed on the characteristic regime of each class.
  double fake_span_limit = 60.0;
  double genuine_span_min = 300.0;
  double span_regime_probability = 0.8;

  std::size_t zipf_max_rank = 1000;
};

// Deterministic for a given seed (bit-identical datasets). The result is
// fully tagged (no mix reviewers are generated) and has derived business
// stats, so it passes validate_dataset as-is. Throws on parameter bounds:
// fake_ratio in (0,1), zipf_exponent > 1, n_reviewers >= 20.
Dataset generate(const SynthConfig& config);

// Per-feature mean and population standard deviation over the dataset's
// matrix rows, in canonical column order.
struct FeatureMoments {
  std::array<double, kFeatureCount> mean{};
  std::array<double, kFeatureCount> std_dev{};
};

FeatureMoments summarize(const Dataset& d);

}  // namespace crfdspam

#endif  // CRFDSPAM_SYNTH_HPP_

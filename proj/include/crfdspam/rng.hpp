#ifndef CRFDSPAM_RNG_HPP_
#define CRFDSPAM_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

// Seeded sampling helpers. std::mt19937_64 output is fully specified by the
// standard, but the std::*_distribution adaptors are not, so every mapping
// from raw engine output to a sample is done here by hand. Identical seeds
// therefore give identical streams on any platform.

namespace crfdspam {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased integer in [0, n) via Lemire's multiply-with-rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; the spare value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = uniform01();
    } while (u <= 0.0);
    const double v = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * 3.14159265358979323846 * v;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Zipf sampler over ranks 1..max_rank with P(r) proportional to r^-exponent,
// drawn by inverting the precomputed cumulative mass.
class ZipfSampler {
 public:
  ZipfSampler(std::size_t max_rank, double exponent) {
    if (max_rank == 0) throw std::invalid_argument("ZipfSampler: max_rank must be positive");
    if (!(exponent > 0.0)) throw std::invalid_argument("ZipfSampler: exponent must be positive");
    cumulative_.reserve(max_rank);
    double total = 0.0;
    for (std::size_t r = 1; r <= max_rank; ++r) {
      total += std::pow(static_cast<double>(r), -exponent);
      cumulative_.push_back(total);
    }
    for (double& c : cumulative_) c /= total;
    cumulative_.back() = 1.0;
  }

  // Rank in [1, max_rank].
  std::size_t sample(Rng& rng) const {
    const double u = rng.uniform01();
    std::size_t lo = 0, hi = cumulative_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cumulative_[mid] < u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo + 1;
  }

  std::size_t max_rank() const { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

}  // namespace crfdspam

#endif  // CRFDSPAM_RNG_HPP_

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "liebundle/types.hpp"

namespace liebundle {

/// Seeded random source with pinned output sequences.  The gaussian and
/// uniform draws are implemented on top of raw mt19937_64 words so that a
/// given seed produces the same stream on every standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    // Box-Muller; one value per call keeps the stream layout simple.
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  Vec gaussian_vector(Index n) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  Vec unit_vector(Index n) {
    Vec v = gaussian_vector(n);
    double nrm = v.norm();
    while (nrm < 1e-12) {
      v = gaussian_vector(n);
      nrm = v.norm();
    }
    return v / nrm;
  }

 private:
  std::mt19937_64 eng_;
  std::uint64_t seed_;
};

/// Stable FNV-1a mix used to derive per-claim sub-seeds, so that running a
/// subset of claims reproduces the numbers of a full run.
inline std::uint64_t mix_seed(std::uint64_t seed, const std::string& tag) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace liebundle

#pragma once

#include <cstdint>

#include "decodyn/common.hpp"

namespace decodyn {

// SplitMix64: a tiny counter-based generator with a fixed avalanche
// function, reproducible bit-for-bit across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; pairs are cached.
  double normal();

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

CMat random_gaussian_matrix(SplitMix64& rng, int rows, int cols);
CMat random_hermitian(SplitMix64& rng, int n);
CMat random_psd(SplitMix64& rng, int n, int rank = 0);
// Unit-trace PSD matrix (rank defaults to full).
CMat random_density(SplitMix64& rng, int n, int rank = 0);
CMat random_unitary(SplitMix64& rng, int n);

}  // namespace decodyn

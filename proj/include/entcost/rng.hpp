#pragma once

#include <cstdint>
#include <random>

#include "entcost/qmat.hpp"

namespace entcost {

/// SplitMix64 finaliser, used for seed derivation only.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seedable generator: std::mt19937_64 (fully specified by the standard)
/// with hand-rolled uniform/normal transforms so streams are identical
/// across standard library implementations.
///
/// Stream splitting: stream k of master seed s is seeded with
/// splitmix64(s ^ splitmix64(k + 1)). Stream 0 is the "main" stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(seed ^ splitmix64(stream + 1))) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (both variates used).
  double normal();

  /// Complex Gaussian with E|z|^2 = 1.
  cplx complex_normal();

  Matrix gaussian_matrix(std::size_t rows, std::size_t cols);
  Vector gaussian_vector(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace entcost

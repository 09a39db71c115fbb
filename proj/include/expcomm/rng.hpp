#pragma once

#include <cstdint>
#include <random>

#include "expcomm/matrix.hpp"

namespace expcomm {

/// Seedable, splittable pseudo-random source with a platform-independent
/// output sequence.
///
/// The engine is std::mt19937_64 (its output is fixed by the standard); the
/// seed is first scrambled with SplitMix64 so that adjacent seeds (seed,
/// seed + 1, ...) give unrelated streams. Uniform and Gaussian variates are
/// derived here rather than through <random> distributions, whose outputs
/// differ between standard library implementations.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64;seed=splitmix64(seed);uniform=53bit;normal=marsaglia-polar";

  explicit Rng(std::uint64_t seed);

  /// SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t x);

  /// Independent child stream; does not advance this generator.
  Rng split(std::uint64_t stream) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double normal();
  /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  Complex complex_normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace expcomm

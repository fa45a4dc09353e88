#pragma once

#include <cstdint>
#include <random>

namespace evohandoff {

/// Seeded deterministic random stream.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// maps raw draws to reals and integers with explicit arithmetic, so the same
/// seed yields the same draws on every standard library.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform real in [0, 1) with 53 bits of resolution.
  double uniform01();
  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in the closed range [lo, hi]; unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p);

  /// Independent child stream keyed by `tag`; the parent is not advanced.
  RngStream derive(std::uint64_t tag) const;

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t value) noexcept;

}  // namespace evohandoff

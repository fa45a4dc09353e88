#include "evohandoff/rng.hpp"

#include <limits>

#include "evohandoff/errors.hpp"

namespace evohandoff {

std::uint64_t mix_seed(std::uint64_t value) noexcept {
  value += 0x9E3779B97F4A7C15ULL;
  value = (value ^ (value >> 30)) * 0xBF58476D1CE4E5B9ULL;
  value = (value ^ (value >> 27)) * 0x94D049BB133111EBULL;
  return value ^ (value >> 31);
}

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) {
    throw DomainError("uniform_int: empty range");
  }
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1U;
  if (span == 0) {  // full 64-bit range
    return static_cast<std::int64_t>(engine_());
  }
  // Rejection sampling on the largest multiple of span.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - 
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw = engine_();
  while (draw >= limit) {
    draw = engine_();
  }
  return lo + static_cast<std::int64_t>(draw % span);
}

bool RngStream::bernoulli(double p) {
  return uniform01() < p;
}

RngStream RngStream::derive(std::uint64_t tag) const {
  return RngStream(mix_seed(seed_ ^ mix_seed(tag)));
}

}  // namespace evohandoff

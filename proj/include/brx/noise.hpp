#pragma once

#include <cstdint>

#include "brx/types.hpp"

namespace brx {

/// Counter-based uniform generator.
///
/// The stream is a pure function of (seed, position): position k yields the
/// SplitMix64 output for state seed + (k+1)*golden, mapped to the open unit
/// interval. Consequences the rest of the code relies on:
///   - identical seed => bit-identical stream on every platform
///     (integer arithmetic plus one multiply by a power of two);
///   - blocks can be addressed out of order, so common-random-number
///     schemes and sharded Monte-Carlo loops see exactly the same numbers;
///   - values are never exactly 0 or 1 (the mapping is ((z>>11)+0.5)*2^-53).
class NoiseStream {
  public:
    explicit NoiseStream(std::uint64_t seed, std::uint64_t start_position = 0)
        : seed_(seed), position_(start_position) {}

    /// Uniform in (0,1) at an absolute stream position.
    static double uniform_at(std::uint64_t seed, std::uint64_t position);

    /// Next d uniforms; advances the counter by d.
    NoiseVector next(std::size_t d);

    /// Fill without allocating; advances the counter by out.eps.size().
    void next_into(NoiseVector& out);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t position() const noexcept { return position_; }

  private:
    std::uint64_t seed_;
    std::uint64_t position_;
};

} // namespace brx

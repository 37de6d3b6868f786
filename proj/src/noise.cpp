#include "brx/noise.hpp"

namespace brx {

namespace {

// SplitMix64: the output at position k is the finalizer applied to
// seed + (k+1) * golden. Pure integer arithmetic, so the stream is
// identical on every conforming platform.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t position) {
    std::uint64_t z = seed + (position + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

double NoiseStream::uniform_at(std::uint64_t seed, std::uint64_t position) {
    // ((z >> 11) + 0.5) * 2^-53 lies in [2^-54, 1 - 2^-54]: never 0 or 1.
    const std::uint64_t z = splitmix64_at(seed, position);
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

NoiseVector NoiseStream::next(std::size_t d) {
    NoiseVector v;
    v.eps.resize(d);
    next_into(v);
    return v;
}

void NoiseStream::next_into(NoiseVector& out) {
    for (double& e : out.eps) e = uniform_at(seed_, position_++);
}

} // namespace brx

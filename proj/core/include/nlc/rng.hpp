#pragma once

#include <array>
#include <cstdint>

namespace nlc::rng {

/// Philox4x64-10 counter-based generator block function.
///
/// Stateless: every 256-bit counter / 128-bit key pair maps to four
/// independent 64-bit outputs. Draws are addressed, never sequenced, so
/// Monte Carlo trials can run in any order (or in parallel) and still
/// produce bit-identical streams.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key);

// Substream tags keep draw purposes from colliding within one (seed, stream).
enum class Substream : std::uint64_t {
    init = 0,          // initial measurement noise
    edge_noise = 1,    // per-edge channel noise
    vector_noise = 2,  // vector channel noise
    graph = 3,         // graph generation (coordinates, coin flips)
    test = 4,          // property-test data
};

/// Uniform double in the open interval (0, 1).
double uniform(std::uint64_t seed, std::uint64_t stream, Substream sub,
               std::uint64_t t, std::uint64_t index);

/// Standard normal draw (Box-Muller), addressed by (seed, stream, sub, t, index).
double normal(std::uint64_t seed, std::uint64_t stream, Substream sub,
              std::uint64_t t, std::uint64_t index);

}  // namespace nlc::rng

#include "nlc/rng.hpp"

#include <cmath>

namespace nlc::rng {

namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline std::array<std::uint64_t, 4> block(std::uint64_t seed, std::uint64_t stream,
                                          Substream sub, std::uint64_t t,
                                          std::uint64_t index) {
    return philox4x64({index, t, static_cast<std::uint64_t>(sub), 0}, {seed, stream});
}

// (0,1) strictly: 53-bit mantissa offset by half an ulp, so log() is safe.
inline double to_unit(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key) {
    std::array<std::uint64_t, 4> c = counter;
    std::uint64_t k0 = key[0];
    std::uint64_t k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMult0, c[0], hi0, lo0);
        mulhilo(kMult1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return c;
}

double uniform(std::uint64_t seed, std::uint64_t stream, Substream sub,
               std::uint64_t t, std::uint64_t index) {
    return to_unit(block(seed, stream, sub, t, index)[0]);
}

double normal(std::uint64_t seed, std::uint64_t stream, Substream sub,
              std::uint64_t t, std::uint64_t index) {
    const auto words = block(seed, stream, sub, t, index);
    const double u1 = to_unit(words[0]);
    const double u2 = to_unit(words[1]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace nlc::rng

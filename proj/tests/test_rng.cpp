#include <doctest.h>

#include <cmath>
#include <set>

#include "nlc/rng.hpp"

using namespace nlc;

// Known-answer vectors generated with numpy.random.Philox (same algorithm;
// numpy emits the block for counter+1, which was accounted for when the
// vectors were produced).
TEST_CASE("philox4x64 known-answer vectors") {
    using A4 = std::array<std::uint64_t, 4>;
    using A2 = std::array<std::uint64_t, 2>;

    CHECK(rng::philox4x64(A4{0, 0, 0, 0}, A2{0, 0}) ==
          A4{0x16554d9eca36314cull, 0xdb20fe9d672d0fdcull, 0xd7e772cee186176bull,
             0x7e68b68aec7ba23bull});
    CHECK(rng::philox4x64(A4{1, 0, 0, 0}, A2{0, 0}) ==
          A4{0x02f4ba6408e4d89bull, 0x3dd62b0b9ca8c5b2ull, 0x1c8667a55d902e79ull,
             0x907d7a052fd5b4dcull});
    const std::uint64_t all = 0xffffffffffffffffull;
    CHECK(rng::philox4x64(A4{all, all, all, all}, A2{all, all}) ==
          A4{0x87b092c3013fe90bull, 0x438c3c67be8d0224ull, 0x9cc7d7c69cd777b6ull,
             0xa09caebf594f0ba0ull});
    CHECK(rng::philox4x64(A4{1, 2, 3, 4}, A2{0xdeadbeefull, 0xcafef00dull}) ==
          A4{0x035bafa68db6579eull, 0x7175a7a344962967ull, 0x879fca13b23b8182ull,
             0x0e9e0b09af67f478ull});
    CHECK(rng::philox4x64(A4{42, 7, 3, 0}, A2{123456789ull, 987654321ull}) ==
          A4{0xae816748d1df0ec9ull, 0x66d5760a092063d7ull, 0xe0986fe84b31c2e8ull,
             0xc1347a5028437310ull});
}

TEST_CASE("uniform draws live strictly inside (0,1) and are addressable") {
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const double u = rng::uniform(7, 3, rng::Substream::test, 11, k);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        CHECK(u == rng::uniform(7, 3, rng::Substream::test, 11, k));
    }
    // different coordinates give different values
    std::set<double> seen;
    for (std::uint64_t k = 0; k < 100; ++k) {
        seen.insert(rng::uniform(7, 3, rng::Substream::test, 11, k));
        seen.insert(rng::uniform(7, 3, rng::Substream::test, 12, k));
        seen.insert(rng::uniform(7, 4, rng::Substream::test, 11, k));
        seen.insert(rng::uniform(8, 3, rng::Substream::test, 11, k));
        seen.insert(rng::uniform(7, 3, rng::Substream::init, 11, k));
    }
    CHECK(seen.size() == 500);
}

TEST_CASE("normal draws have the expected first and second moments") {
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int k = 0; k < n; ++k) {
        const double z = rng::normal(123, 0, rng::Substream::test, 0, k);
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::fabs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(var - 1.0) < 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("streams are independent enough for paired trials") {
    // correlation between two streams across many draws
    const int n = 50000;
    double sxy = 0.0;
    for (int k = 0; k < n; ++k) {
        const double a = rng::normal(9, 0, rng::Substream::test, 5, k);
        const double b = rng::normal(9, 1, rng::Substream::test, 5, k);
        sxy += a * b;
    }
    CHECK(std::fabs(sxy / n) < 5.0 / std::sqrt(static_cast<double>(n)));
}

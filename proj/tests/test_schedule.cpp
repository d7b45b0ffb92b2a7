#include <doctest.h>

#include <cmath>

#include "nlc/errors.hpp"
#include "nlc/schedule.hpp"

using namespace nlc;

TEST_CASE("step values per kind") {
    const auto c = Schedule::make_constant(1.5);
    CHECK(c.at(0) == 1.5);
    CHECK(c.at(1000) == 1.5);

    const auto inv = Schedule::make_inverse_t();
    CHECK(inv.at(0) == 1.0);
    CHECK(inv.at(1) == 0.5);
    CHECK(inv.at(9) == doctest::Approx(0.1));

    const auto harm = Schedule::make_harmonic(0.25);
    CHECK(harm.at(0) == 0.25);
    CHECK(harm.at(4) == doctest::Approx(0.05));

    const auto custom = Schedule::make_a_over_t(2.0, 10.0);
    CHECK(custom.at(0) == doctest::Approx(0.2));
    CHECK(custom.at(10) == doctest::Approx(0.1));
}

TEST_CASE("only the decreasing kinds satisfy the step-sum conditions") {
    CHECK_FALSE(Schedule::make_constant(0.5).decreasing());
    CHECK(Schedule::make_inverse_t().decreasing());
    CHECK(Schedule::make_harmonic(1.0).decreasing());
    CHECK(Schedule::make_a_over_t(1.0, 2.0).decreasing());
}

TEST_CASE("finite sums of squares match direct accumulation") {
    for (const auto& s : {Schedule::make_inverse_t(), Schedule::make_harmonic(0.7),
                          Schedule::make_a_over_t(1.3, 4.0), Schedule::make_constant(0.3)}) {
        for (std::int64_t T : {0LL, 1LL, 2LL, 17LL, 1000LL}) {
            double direct = 0.0;
            for (std::int64_t t = 0; t < T; ++t) direct += s.at(t) * s.at(t);
            CHECK(s.sum_sq(T) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
    CHECK(Schedule::make_inverse_t().sum_sq(1) == doctest::Approx(1.0));
    CHECK(Schedule::make_inverse_t().sum_sq(2) == doctest::Approx(1.25));
}

TEST_CASE("full series: pi^2/6 for the unit harmonic sequence") {
    const double pi2_6 = M_PI * M_PI / 6.0;
    CHECK(Schedule::make_inverse_t().sum_sq(std::nullopt) == doctest::Approx(pi2_6).epsilon(1e-14));
    CHECK(Schedule::make_harmonic(2.0).sum_sq(std::nullopt) ==
          doctest::Approx(4.0 * pi2_6).epsilon(1e-14));
    CHECK(Schedule::make_a_over_t(1.0, 1.0).sum_sq(std::nullopt) ==
          doctest::Approx(pi2_6).epsilon(1e-12));
    CHECK_THROWS_AS(Schedule::make_constant(0.1).sum_sq(std::nullopt), ValidationError);
}

TEST_CASE("trigamma against brute partial sums") {
    for (double x : {1.0, 2.5, 7.0, 19.5, 40.0}) {
        double partial = 0.0;
        for (int k = 0; k < 2000000; ++k) partial += 1.0 / ((x + k) * (x + k));
        // integral tail bound: remainder within [1/(x+K), 1/(x+K-1)]
        const double tail = 1.0 / (x + 2000000.0 - 0.5);
        CHECK(trigamma(x) == doctest::Approx(partial + tail).epsilon(1e-10));
    }
    CHECK_THROWS_AS(trigamma(0.0), ValidationError);
}

TEST_CASE("schedule designators round-trip") {
    for (const char* d : {"constant:1.5", "inverse_t", "harmonic:0.25",
                          "custom_a_over_t:2:10"}) {
        const auto s = Schedule::parse(d);
        CHECK(Schedule::parse(s.designator()) == s);
    }
    CHECK(Schedule::parse("inverse_t").designator() == "inverse_t");
    CHECK_THROWS_AS(Schedule::parse("geometric:0.5"), ValidationError);
    CHECK_THROWS_AS(Schedule::parse("constant"), ValidationError);
    CHECK_THROWS_AS(Schedule::parse("constant:-1"), ValidationError);
    CHECK_THROWS_AS(Schedule::parse("harmonic:x"), ValidationError);
}

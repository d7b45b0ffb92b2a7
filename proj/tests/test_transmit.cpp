#include <doctest.h>

#include <cmath>
#include <vector>

#include "nlc/errors.hpp"
#include "nlc/rng.hpp"
#include "nlc/transmit.hpp"

using namespace nlc;

namespace {

std::vector<TransmitFunction> bounded_catalog() {
    return {
        TransmitFunction::parse("tanh:0.05:10"),
        TransmitFunction::parse("arctan:0.005:7.5"),
        TransmitFunction::parse("arctan_normalized:0.04:5"),
        TransmitFunction::parse("gudermannian:0.005:0"),
        TransmitFunction::parse("algebraic_sigmoid:0.006:0"),
    };
}

std::vector<double> dense_grid(double lo, double hi, int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
    return g;
}

}  // namespace

TEST_CASE("evaluate: catalog values") {
    const auto f = TransmitFunction::parse("tanh:0.05:10");
    CHECK(f(0.0) == 0.0);
    CHECK(f(1e9) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));  // 10 dB asymptote
    CHECK(TransmitFunction::identity()(7.3) == 7.3);
    // dB conversion: 10 dB is a linear power of 10
    CHECK(f.rho_linear() == doctest::Approx(10.0));
}

TEST_CASE("derivative: values at the origin") {
    const auto tanh_f = TransmitFunction::parse("tanh:0.05:10");
    CHECK(tanh_f.derivative(0.0) == doctest::Approx(std::sqrt(10.0) * 0.05).epsilon(1e-14));

    const auto gd = TransmitFunction::parse("gudermannian:0.05:10");
    CHECK(gd.derivative(0.0) == doctest::Approx(std::sqrt(10.0) * 0.05).epsilon(1e-14));

    const auto alg = TransmitFunction::parse("algebraic_sigmoid:0.006:0");
    CHECK(alg.derivative(0.0) == doctest::Approx(0.006).epsilon(1e-14));

    CHECK(TransmitFunction::identity().derivative(123.0) == 1.0);
    CHECK(TransmitFunction::identity().derivative_bound() == 1.0);
}

TEST_CASE("transmit power stays under the peak budget") {
    const auto f = TransmitFunction::parse("tanh:0.05:10");
    CHECK(transmit_power(f, 0.0) == 0.0);
    CHECK(transmit_power(f, 1e9) == doctest::Approx(10.0).epsilon(1e-12));
    const auto alg = TransmitFunction::parse("algebraic_sigmoid:1:0");
    for (double x : dense_grid(-1e6, 1e6, 2001)) {
        const double p = transmit_power(alg, x);
        CHECK(p >= 0.0);
        CHECK(p < 1.0);
    }
}

TEST_CASE("amplitude bounds per kind") {
    const double sqrt_rho = std::sqrt(std::pow(10.0, 0.75));
    CHECK(TransmitFunction::parse("tanh:0.005:7.5").amplitude_bound() ==
          doctest::Approx(sqrt_rho));
    CHECK(TransmitFunction::parse("arctan:0.005:7.5").amplitude_bound() ==
          doctest::Approx(sqrt_rho * M_PI / 2.0));
    CHECK(TransmitFunction::parse("arctan_normalized:0.005:7.5").amplitude_bound() ==
          doctest::Approx(sqrt_rho));
    CHECK(std::isinf(TransmitFunction::identity().amplitude_bound()));

    // the literal arctan really does exceed sqrt(rho); the normalized one does not
    const auto lit = TransmitFunction::parse("arctan:1:0");
    CHECK(lit(1e9) > 1.0);
    const auto norm = TransmitFunction::parse("arctan_normalized:1:0");
    CHECK(norm(1e9) < 1.0);
}

TEST_CASE("derivative_check: finite differences agree with the analytic forms") {
    const auto grid = dense_grid(-100.0, 100.0, 401);
    for (const auto& f : bounded_catalog()) {
        CHECK(derivative_check(f, grid, 1e-5) <= 1e-6);
    }
    // dense near zero where curvature peaks
    const auto near0 = dense_grid(-1.0, 1.0, 801);
    CHECK(derivative_check(TransmitFunction::parse("arctan:0.8:3"), near0, 1e-5) <= 1e-6);
    // affine map: exact
    CHECK(derivative_check(TransmitFunction::identity(), grid, 1e-5) <= 1e-12);
}

TEST_CASE("monotonicity: h is strictly increasing") {
    for (const auto& f : bounded_catalog()) {
        for (int k = 0; k < 10000; ++k) {
            const double a =
                1000.0 * (rng::uniform(99, 0, rng::Substream::test, 0, 2 * k) - 0.5);
            const double b =
                1000.0 * (rng::uniform(99, 0, rng::Substream::test, 0, 2 * k + 1) - 0.5);
            const double lo = std::min(a, b);
            const double hi = std::max(a, b);
            if (lo == hi) continue;
            CHECK(f(lo) < f(hi));
        }
    }
}

TEST_CASE("oddness of the bounded kinds") {
    for (const auto& f : bounded_catalog()) {
        CHECK(f(0.0) == 0.0);
        for (double x : dense_grid(0.0, 2000.0, 501)) {
            CHECK(std::fabs(f(-x) + f(x)) <= 1e-12 * std::max(1.0, std::fabs(f(x))));
        }
    }
}

TEST_CASE("derivative bound c is attained at the origin") {
    for (const auto& f : bounded_catalog()) {
        const double c = f.derivative_bound();
        CHECK(c > 0.0);
        for (double x : dense_grid(-2000.0, 2000.0, 2001)) {
            const double d = f.derivative(x);
            CHECK(d > 0.0);
            CHECK(d <= c + 1e-12);
        }
    }
}

TEST_CASE("designators round-trip") {
    for (const char* d : {"tanh:0.05:10", "arctan:0.005:7.5", "arctan_normalized:0.04:5",
                          "gudermannian:0.0050000000000000001:0", "algebraic_sigmoid:0.006:0",
                          "linear"}) {
        const auto f = TransmitFunction::parse(d);
        CHECK(TransmitFunction::parse(f.designator()) == f);
    }
    CHECK(TransmitFunction::parse("tanh:0.05:10").designator() == "tanh:0.050000000000000003:10");
    CHECK_THROWS_AS(TransmitFunction::parse("sigmoid:1:0"), ValidationError);
    CHECK_THROWS_AS(TransmitFunction::parse("tanh:0.05"), ValidationError);
    CHECK_THROWS_AS(TransmitFunction::parse("tanh:-1:0"), ValidationError);
    CHECK_THROWS_AS(TransmitFunction::parse("linear:1:0"), ValidationError);
    CHECK_THROWS_AS(TransmitFunction::parse("tanh:abc:0"), ValidationError);
}

#include <doctest.h>

#include <cmath>

#include "nlc/errors.hpp"
#include "nlc/spectrum.hpp"
#include "nlc/topology.hpp"

using namespace nlc;

namespace {

// closed form for the path graph: lambda_k = 2 - 2 cos(k pi / N)
double path_eigenvalue(int k, int n) {
    return 2.0 - 2.0 * std::cos(k * M_PI / n);
}

Spectrum spectrum_of(const Topology& t) { return spectrum(laplacian(t)); }

}  // namespace

TEST_CASE("path graph eigenvalues match the closed form") {
    const auto p3 = spectrum_of(generate({GraphFamily::path, 3, {}, 0}).topology);
    CHECK(std::fabs(p3.eigenvalues[0]) <= 1e-10);
    CHECK(std::fabs(p3.eigenvalues[1] - 1.0) <= 1e-10);
    CHECK(std::fabs(p3.eigenvalues[2] - 3.0) <= 1e-10);

    const int n = 5;
    const auto p5 = spectrum_of(generate({GraphFamily::path, n, {}, 0}).topology);
    for (int k = 0; k < n; ++k) {
        CHECK(std::fabs(p5.eigenvalues[k] - path_eigenvalue(k, n)) <= 1e-10);
    }
}

TEST_CASE("complete graph eigenvalues are {0, N, ..., N}") {
    for (int n : {3, 10, 75}) {
        const auto s = spectrum_of(generate({GraphFamily::complete, n, {}, 0}).topology);
        CHECK(std::fabs(s.eigenvalues[0]) <= 1e-8);
        for (int k = 1; k < n; ++k) {
            CHECK(std::fabs(s.eigenvalues[k] - n) <= 1e-8);
        }
        CHECK(std::fabs(s.fiedler() - n) <= 1e-8);
        CHECK(std::fabs(s.lambda_max() - n) <= 1e-8);
    }
}

TEST_CASE("cycle graph eigenvalues match 2 - 2 cos(2 pi k / N)") {
    const int n = 8;
    const auto s = spectrum_of(generate({GraphFamily::cycle, n, {}, 0}).topology);
    std::vector<double> expected;
    for (int k = 0; k < n; ++k) expected.push_back(2.0 - 2.0 * std::cos(2.0 * M_PI * k / n));
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < n; ++k) {
        CHECK(std::fabs(s.eigenvalues[k] - expected[k]) <= 1e-10);
    }
}

TEST_CASE("zero eigenvalue multiplicity counts components") {
    const Topology two_pairs(4, {{0, 1}, {2, 3}});
    const auto s = spectrum_of(two_pairs);
    CHECK(std::fabs(s.eigenvalues[0]) <= 1e-8);
    CHECK(std::fabs(s.eigenvalues[1]) <= 1e-8);  // lambda_2 = 0: disconnected
    CHECK(s.eigenvalues[2] > 1e-6);

    const Topology three_parts(7, {{0, 1}, {2, 3}, {4, 5}, {4, 6}, {5, 6}});
    const auto s3 = spectrum_of(three_parts);
    int zeros = 0;
    for (double lam : s3.eigenvalues) {
        if (std::fabs(lam) <= 1e-8) ++zeros;
    }
    CHECK(zeros == 3);
}

TEST_CASE("eigendecomposition reconstructs the laplacian") {
    for (const GraphSpec spec : {GraphSpec{GraphFamily::random_geometric, 120, {0.3}, 11},
                                 GraphSpec{GraphFamily::random_geometric, 200, {0.25}, 3},
                                 GraphSpec{GraphFamily::erdos_renyi, 80, {0.15}, 9}}) {
        const auto t = generate(spec).topology;
        const Matrix L = laplacian(t);
        const auto s = spectrum(L);
        const int n = s.size();

        Matrix rebuilt(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k) {
                    acc += s.eigenvectors(i, k) * s.eigenvalues[k] * s.eigenvectors(j, k);
                }
                rebuilt(i, j) = acc;
            }
        }
        CHECK(max_abs_diff(rebuilt, L) <= 1e-9);

        // orthonormality
        for (int a = 0; a < n; ++a) {
            for (int b = a; b < n; ++b) {
                double dot = 0.0;
                for (int r = 0; r < n; ++r) dot += s.eigenvectors(r, a) * s.eigenvectors(r, b);
                CHECK(std::fabs(dot - (a == b ? 1.0 : 0.0)) <= 1e-10);
            }
        }

        // non-negative spectrum
        for (double lam : s.eigenvalues) CHECK(lam >= -1e-9);
    }
}

TEST_CASE("first eigenvector of a connected graph is the normalized ones vector") {
    const auto t = generate({GraphFamily::random_geometric, 40, {0.4}, 2}).topology;
    const auto s = spectrum_of(t);
    const double expect = 1.0 / std::sqrt(40.0);
    for (int r = 0; r < 40; ++r) {
        CHECK(std::fabs(s.eigenvectors(r, 0) - expect) <= 1e-8);
    }
}

TEST_CASE("sign convention makes the decomposition reproducible") {
    const auto t = generate({GraphFamily::random_geometric, 30, {0.45}, 8}).topology;
    const auto a = spectrum_of(t);
    const auto b = spectrum_of(t);
    CHECK(a.eigenvectors == b.eigenvectors);
    for (int c = 0; c < a.size(); ++c) {
        double best = 0.0;
        int arg = 0;
        for (int r = 0; r < a.size(); ++r) {
            if (std::fabs(a.eigenvectors(r, c)) > best) {
                best = std::fabs(a.eigenvectors(r, c));
                arg = r;
            }
        }
        CHECK(a.eigenvectors(arg, c) > 0.0);
    }
}

TEST_CASE("traversal connectivity and the fiedler value agree across families") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        for (const auto& spec :
             {GraphSpec{GraphFamily::random_geometric, 30, {0.35}, seed},
              GraphSpec{GraphFamily::erdos_renyi, 25, {0.2}, seed},
              GraphSpec{GraphFamily::path, 10 + static_cast<int>(seed), {}, 0},
              GraphSpec{GraphFamily::cycle, 5 + static_cast<int>(seed), {}, 0},
              GraphSpec{GraphFamily::star, 4 + static_cast<int>(seed), {}, 0}}) {
            const auto t = generate(spec).topology;
            const auto s = spectrum_of(t);
            CHECK(is_connected(t) == (s.fiedler() > 1e-8));
            ++checked;

            // disjoint union of two copies must read as disconnected
            std::vector<std::pair<int, int>> doubled = t.edges();
            const int n = t.node_count();
            for (const auto& [i, j] : t.edges()) doubled.emplace_back(i + n, j + n);
            const Topology split(2 * n, std::move(doubled));
            const auto s2 = spectrum_of(split);
            CHECK_FALSE(is_connected(split));
            CHECK(s2.fiedler() <= 1e-8);
            ++checked;
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("spectrum rejects a non-symmetric matrix") {
    Matrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 0.5;
    CHECK_THROWS_AS(spectrum(m), ValidationError);
}

TEST_CASE("fiedler accessor requires two nodes") {
    const auto s = spectrum_of(Topology(1, {}));
    CHECK_THROWS_AS(s.fiedler(), ValidationError);
}

TEST_CASE("2x2 closed form") {
    Matrix m(2, 2);
    m(0, 0) = 2.0;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(1, 1) = 2.0;
    const auto s = spectrum(m);
    CHECK(std::fabs(s.eigenvalues[0] - 1.0) <= 1e-13);
    CHECK(std::fabs(s.eigenvalues[1] - 3.0) <= 1e-13);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::fabs(std::fabs(s.eigenvectors(0, 0)) - inv_sqrt2) <= 1e-12);
}

#include <doctest.h>

#include <sstream>

#include "nlc/errors.hpp"
#include "nlc/topology.hpp"

using namespace nlc;

TEST_CASE("laplacian of the 3-node path") {
    const Topology t(3, {{0, 1}, {1, 2}});
    const Matrix L = laplacian(t);
    const double expected[3][3] = {{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(L(i, j) == expected[i][j]);
}

TEST_CASE("laplacian of a single isolated node") {
    const Topology t(1, {});
    const Matrix L = laplacian(t);
    CHECK(L.rows() == 1);
    CHECK(L(0, 0) == 0.0);
}

TEST_CASE("laplacian of the triangle") {
    const auto t = generate({GraphFamily::complete, 3, {}, 0}).topology;
    const Matrix L = laplacian(t);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(L(i, j) == (i == j ? 2.0 : -1.0));
        }
    }
}

TEST_CASE("row sums of generated laplacians vanish exactly") {
    const GraphSpec specs[] = {
        {GraphFamily::path, 17, {}, 0},
        {GraphFamily::cycle, 12, {}, 0},
        {GraphFamily::star, 9, {}, 0},
        {GraphFamily::grid, 12, {}, 0},
        {GraphFamily::complete, 8, {}, 0},
        {GraphFamily::random_geometric, 40, {0.35}, 5},
        {GraphFamily::erdos_renyi, 30, {0.3}, 6},
    };
    for (const auto& spec : specs) {
        const auto t = generate(spec).topology;
        const Matrix L = laplacian(t);
        for (int i = 0; i < t.node_count(); ++i) {
            double row = 0.0;
            for (int j = 0; j < t.node_count(); ++j) row += L(i, j);
            CHECK(row == 0.0);  // integer arithmetic, exact
        }
    }
}

TEST_CASE("connectivity by traversal") {
    CHECK(is_connected(Topology(3, {{0, 1}, {1, 2}})));
    CHECK_FALSE(is_connected(Topology(4, {{0, 1}, {2, 3}})));
    CHECK(is_connected(generate({GraphFamily::complete, 75, {}, 0}).topology));
    CHECK(is_connected(Topology(1, {})));
}

TEST_CASE("family generators produce the expected edge sets") {
    const auto path = generate({GraphFamily::path, 3, {}, 0}).topology;
    CHECK(path.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

    const auto complete = generate({GraphFamily::complete, 10, {}, 0}).topology;
    CHECK(complete.edge_count() == 45);

    const auto star = generate({GraphFamily::star, 8, {}, 0}).topology;
    CHECK(star.edge_count() == 7);
    CHECK(star.degree(0) == 7);

    const auto grid = generate({GraphFamily::grid, 12, {3}, 0}).topology;
    CHECK(grid.edge_count() == 17);  // 3x4 lattice
    CHECK(is_connected(grid));

    const auto cycle = generate({GraphFamily::cycle, 6, {}, 0}).topology;
    CHECK(cycle.edge_count() == 6);
    for (int i = 0; i < 6; ++i) CHECK(cycle.degree(i) == 2);
}

TEST_CASE("random families are deterministic per seed") {
    const GraphSpec rgg{GraphFamily::random_geometric, 75, {0.3}, 42};
    const auto a = generate(rgg);
    const auto b = generate(rgg);
    CHECK(a.topology.edges() == b.topology.edges());
    CHECK(a.retries == b.retries);
    CHECK(is_connected(a.topology));

    const GraphSpec er{GraphFamily::erdos_renyi, 50, {0.1}, 7};
    CHECK(generate(er).topology.edges() == generate(er).topology.edges());

    // different seed, different instance
    GraphSpec other = rgg;
    other.seed = 43;
    CHECK(generate(other).topology.edges() != a.topology.edges());
}

TEST_CASE("hopeless radius exhausts the connectivity retry cap") {
    CHECK_THROWS_AS(generate({GraphFamily::random_geometric, 75, {0.02}, 1}),
                    ValidationError);
}

TEST_CASE("invalid topologies are rejected") {
    CHECK_THROWS_AS(Topology(3, {{0, 0}}), ValidationError);          // self-loop
    CHECK_THROWS_AS(Topology(3, {{0, 1}, {1, 0}}), ValidationError);  // duplicate
    CHECK_THROWS_AS(Topology(3, {{0, 5}}), ValidationError);          // out of range
    CHECK_THROWS_AS(Topology(0, {}), ValidationError);
    CHECK_THROWS_AS(generate({GraphFamily::random_geometric, 10, {}, 0}), ValidationError);
    CHECK_THROWS_AS(generate({GraphFamily::erdos_renyi, 10, {1.5}, 0}), ValidationError);
}

TEST_CASE("edge list round-trips through the text format") {
    const auto t = generate({GraphFamily::random_geometric, 20, {0.5}, 3}).topology;
    std::stringstream buf;
    save_edge_list(t, buf);
    const Topology back = load_edge_list(buf);
    CHECK(back.node_count() == t.node_count());
    CHECK(back.edges() == t.edges());
}

TEST_CASE("edge list loader reports malformed input") {
    {
        std::istringstream in("vertices 3\n0 1\n");
        CHECK_THROWS_WITH_AS(load_edge_list(in),
                             "edge list line 1: expected header 'nodes N'",
                             ValidationError);
    }
    {
        std::istringstream in("nodes 3\n0 x\n");
        CHECK_THROWS_AS(load_edge_list(in), ValidationError);
    }
    {
        std::istringstream in("nodes 3\n0 0\n");
        CHECK_THROWS_AS(load_edge_list(in), ValidationError);  // self-loop
    }
    {
        std::istringstream in("nodes 2\n0 1\n0 1\n");
        CHECK_THROWS_AS(load_edge_list(in), ValidationError);  // duplicate
    }
}

TEST_CASE("graph designators round-trip") {
    for (const char* d : {"path:3", "cycle:10", "complete:75", "star:8", "grid:12:3",
                          "random_geometric:75:0.40000000000000002:42",
                          "erdos_renyi:50:0.10000000000000001:7"}) {
        const GraphSpec spec = GraphSpec::parse(d);
        CHECK(spec.designator() == d);
        CHECK(GraphSpec::parse(spec.designator()) == spec);
    }
    CHECK_THROWS_AS(GraphSpec::parse("torus:10"), ValidationError);
    CHECK_THROWS_AS(GraphSpec::parse("path"), ValidationError);
    CHECK_THROWS_AS(GraphSpec::parse("path:3:9:9"), ValidationError);
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nlc/matrix.hpp"

namespace nlc {

/// Simple undirected graph: no self-loops, no duplicate edges, 0-based nodes.
class Topology {
public:
    /// Canonicalizes edges as (min,max) sorted pairs and validates them.
    /// Throws ValidationError on self-loops, duplicates or out-of-range nodes.
    Topology(int node_count, std::vector<std::pair<int, int>> edges);

    int node_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }
    int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }
    int max_degree() const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
};

enum class GraphFamily {
    path,
    cycle,
    complete,
    star,
    grid,
    random_geometric,
    erdos_renyi,
};

struct GraphSpec {
    GraphFamily family = GraphFamily::path;
    int n = 1;
    std::vector<double> params;  // radius / edge probability / grid rows
    std::uint64_t seed = 0;

    bool operator==(const GraphSpec&) const = default;

    /// `family:n[:param][:seed]`, e.g. `random_geometric:75:0.4:42`.
    static GraphSpec parse(const std::string& designator);
    std::string designator() const;
};

struct GenerationOutcome {
    Topology topology;
    int retries = 0;  // extra attempts needed to hit a connected instance
};

/// Deterministic given the spec. Random families are regenerated with an
/// incremented sub-seed until connected; throws ValidationError after the
/// retry cap (64 attempts).
GenerationOutcome generate(const GraphSpec& spec);

/// Connectivity by breadth-first traversal (not eigenvalues).
bool is_connected(const Topology& t);

/// L = D - A. Integer-valued entries, exact row sums of zero.
Matrix laplacian(const Topology& t);

/// Edge-list text format: header `nodes N`, then one `i j` pair per line, 0-based.
void save_edge_list(const Topology& t, std::ostream& out);
Topology load_edge_list(std::istream& in);

std::string family_name(GraphFamily f);

}  // namespace nlc

#include "nlc/topology.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "nlc/errors.hpp"
#include "nlc/rng.hpp"

namespace nlc {

namespace {

constexpr int kConnectivityRetryCap = 64;

std::vector<std::pair<int, int>> path_edges(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return e;
}

std::vector<std::pair<int, int>> cycle_edges(int n) {
    auto e = path_edges(n);
    if (n >= 3) e.emplace_back(0, n - 1);
    return e;
}

std::vector<std::pair<int, int>> complete_edges(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return e;
}

std::vector<std::pair<int, int>> star_edges(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.emplace_back(0, i);
    return e;
}

std::vector<std::pair<int, int>> grid_edges(int n, int rows) {
    const int cols = (n + rows - 1) / rows;
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) {
        const int r = i / cols;
        const int c = i % cols;
        if (c + 1 < cols && i + 1 < n && (i + 1) / cols == r) e.emplace_back(i, i + 1);
        if (r + 1 < rows && i + cols < n) e.emplace_back(i, i + cols);
    }
    return e;
}

std::vector<std::pair<int, int>> rgg_edges(int n, double radius, std::uint64_t seed,
                                           std::uint64_t attempt) {
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = rng::uniform(seed, attempt, rng::Substream::graph, 0, 2 * static_cast<std::uint64_t>(i));
        ys[i] = rng::uniform(seed, attempt, rng::Substream::graph, 0, 2 * static_cast<std::uint64_t>(i) + 1);
    }
    const double r2 = radius * radius;
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = xs[i] - xs[j];
            const double dy = ys[i] - ys[j];
            if (dx * dx + dy * dy <= r2) e.emplace_back(i, j);
        }
    }
    return e;
}

std::vector<std::pair<int, int>> er_edges(int n, double p, std::uint64_t seed,
                                          std::uint64_t attempt) {
    std::vector<std::pair<int, int>> e;
    std::uint64_t k = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++k) {
            if (rng::uniform(seed, attempt, rng::Substream::graph, 1, k) < p) e.emplace_back(i, j);
        }
    }
    return e;
}

}  // namespace

Topology::Topology(int node_count, std::vector<std::pair<int, int>> edges)
    : n_(node_count), edges_(std::move(edges)) {
    if (n_ < 1) throw ValidationError("topology: node count must be >= 1");
    for (auto& [i, j] : edges_) {
        if (i == j) {
            throw ValidationError("topology: self-loop at node " + std::to_string(i));
        }
        if (i < 0 || j < 0 || i >= n_ || j >= n_) {
            throw ValidationError("topology: edge (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") out of range for n=" +
                                  std::to_string(n_));
        }
        if (i > j) std::swap(i, j);
    }
    std::sort(edges_.begin(), edges_.end());
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
        throw ValidationError("topology: duplicate edge (" + std::to_string(dup->first) +
                              "," + std::to_string(dup->second) + ")");
    }
    adjacency_.resize(n_);
    for (const auto& [i, j] : edges_) {
        adjacency_[i].push_back(j);
        adjacency_[j].push_back(i);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

int Topology::max_degree() const {
    int d = 0;
    for (int i = 0; i < n_; ++i) d = std::max(d, degree(i));
    return d;
}

bool is_connected(const Topology& t) {
    const int n = t.node_count();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : t.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n;
}

Matrix laplacian(const Topology& t) {
    const int n = t.node_count();
    Matrix L(n, n);
    for (int i = 0; i < n; ++i) L(i, i) = static_cast<double>(t.degree(i));
    for (const auto& [i, j] : t.edges()) {
        L(i, j) = -1.0;
        L(j, i) = -1.0;
    }
    return L;
}

GenerationOutcome generate(const GraphSpec& spec) {
    if (spec.n < 1) throw ValidationError("generate: n must be >= 1");
    switch (spec.family) {
        case GraphFamily::path:
            return {Topology(spec.n, path_edges(spec.n)), 0};
        case GraphFamily::cycle:
            return {Topology(spec.n, cycle_edges(spec.n)), 0};
        case GraphFamily::complete:
            return {Topology(spec.n, complete_edges(spec.n)), 0};
        case GraphFamily::star:
            return {Topology(spec.n, star_edges(spec.n)), 0};
        case GraphFamily::grid: {
            int rows = spec.params.empty()
                           ? static_cast<int>(std::floor(std::sqrt(static_cast<double>(spec.n))))
                           : static_cast<int>(spec.params[0]);
            rows = std::clamp(rows, 1, spec.n);
            return {Topology(spec.n, grid_edges(spec.n, rows)), 0};
        }
        case GraphFamily::random_geometric:
        case GraphFamily::erdos_renyi:
            break;
    }

    const bool geometric = spec.family == GraphFamily::random_geometric;
    if (spec.params.empty()) {
        throw ValidationError(geometric ? "random_geometric: missing radius parameter"
                                        : "erdos_renyi: missing edge probability");
    }
    const double p = spec.params[0];
    if (geometric && (p <= 0.0 || p > std::sqrt(2.0))) {
        throw ValidationError("random_geometric: radius must be in (0, sqrt(2)]");
    }
    if (!geometric && (p <= 0.0 || p > 1.0)) {
        throw ValidationError("erdos_renyi: edge probability must be in (0, 1]");
    }

    for (int attempt = 0; attempt <= kConnectivityRetryCap; ++attempt) {
        auto edges = geometric ? rgg_edges(spec.n, p, spec.seed, attempt)
                               : er_edges(spec.n, p, spec.seed, attempt);
        Topology t(spec.n, std::move(edges));
        if (is_connected(t)) return {std::move(t), attempt};
    }
    std::ostringstream msg;
    msg << "could not generate connected graph: " << spec.designator() << " after "
        << (kConnectivityRetryCap + 1) << " attempts; increase "
        << (geometric ? "radius" : "edge probability");
    throw ValidationError(msg.str());
}

void save_edge_list(const Topology& t, std::ostream& out) {
    out << "nodes " << t.node_count() << "\n";
    for (const auto& [i, j] : t.edges()) out << i << " " << j << "\n";
}

Topology load_edge_list(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        if (line_no == 1) {
            std::string tag;
            if (!(ls >> tag >> n) || tag != "nodes" || n < 1) {
                throw ValidationError("edge list line 1: expected header 'nodes N'");
            }
            continue;
        }
        std::string first;
        if (!(ls >> first)) continue;  // blank line
        int i, j;
        std::istringstream pair_in(line);
        if (!(pair_in >> i >> j)) {
            throw ValidationError("edge list line " + std::to_string(line_no) +
                                  ": expected 'i j'");
        }
        edges.emplace_back(i, j);
    }
    if (n < 1) throw ValidationError("edge list: missing 'nodes N' header");
    try {
        return Topology(n, std::move(edges));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("edge list: ") + e.what());
    }
}

std::string family_name(GraphFamily f) {
    switch (f) {
        case GraphFamily::path: return "path";
        case GraphFamily::cycle: return "cycle";
        case GraphFamily::complete: return "complete";
        case GraphFamily::star: return "star";
        case GraphFamily::grid: return "grid";
        case GraphFamily::random_geometric: return "random_geometric";
        case GraphFamily::erdos_renyi: return "erdos_renyi";
    }
    return "?";
}

namespace {

GraphFamily family_from_name(const std::string& name) {
    for (auto f : {GraphFamily::path, GraphFamily::cycle, GraphFamily::complete,
                   GraphFamily::star, GraphFamily::grid, GraphFamily::random_geometric,
                   GraphFamily::erdos_renyi}) {
        if (family_name(f) == name) return f;
    }
    throw ValidationError("unknown graph family '" + name + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

GraphSpec GraphSpec::parse(const std::string& designator) {
    const auto parts = split(designator, ':');
    if (parts.size() < 2) {
        throw ValidationError("graph designator '" + designator +
                              "': expected family:n[:param][:seed]");
    }
    GraphSpec spec;
    spec.family = family_from_name(parts[0]);
    try {
        spec.n = std::stoi(parts[1]);
    } catch (...) {
        throw ValidationError("graph designator '" + designator + "': bad node count");
    }
    const bool random = spec.family == GraphFamily::random_geometric ||
                        spec.family == GraphFamily::erdos_renyi;
    std::size_t next = 2;
    const std::size_t max_parts = random ? 4 : (spec.family == GraphFamily::grid ? 3 : 2);
    if (parts.size() > max_parts) {
        throw ValidationError("graph designator '" + designator + "': too many fields");
    }
    if ((random || spec.family == GraphFamily::grid) && parts.size() > next) {
        try {
            spec.params.push_back(std::stod(parts[next]));
        } catch (...) {
            throw ValidationError("graph designator '" + designator + "': bad parameter");
        }
        ++next;
    }
    if (random && parts.size() > next) {
        try {
            spec.seed = std::stoull(parts[next]);
        } catch (...) {
            throw ValidationError("graph designator '" + designator + "': bad seed");
        }
    }
    return spec;
}

std::string GraphSpec::designator() const {
    std::ostringstream out;
    out << family_name(family) << ":" << n;
    const bool random = family == GraphFamily::random_geometric ||
                        family == GraphFamily::erdos_renyi;
    if (!params.empty()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", params[0]);
        out << ":" << buf;
    }
    if (random) out << ":" << seed;
    return out.str();
}

}  // namespace nlc

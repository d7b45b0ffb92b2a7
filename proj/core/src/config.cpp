#include "nlc/config.hpp"

#include <fstream>
#include <sstream>

#include "nlc/errors.hpp"

namespace nlc {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::int64_t strict_int(const std::string& v) {
    std::size_t used = 0;
    const std::int64_t x = std::stoll(v, &used);
    if (used != v.size()) throw ValidationError("trailing characters in '" + v + "'");
    return x;
}

std::uint64_t strict_uint(const std::string& v) {
    if (!v.empty() && v[0] == '-') throw ValidationError("seed must be non-negative");
    std::size_t used = 0;
    const std::uint64_t x = std::stoull(v, &used);
    if (used != v.size()) throw ValidationError("trailing characters in '" + v + "'");
    return x;
}

}  // namespace

std::string ExperimentConfig::render() const {
    std::ostringstream out;
    if (graph_file) {
        out << "graph=file:" << *graph_file << "\n";
    } else {
        out << "graph=" << graph.designator() << "\n";
    }
    out << "transmit=" << transmit.designator() << "\n";
    out << "alpha=" << schedule.designator() << "\n";
    out << "noise=" << noise.designator() << "\n";
    out << "init=" << init.designator() << "\n";
    out << "T=" << steps << "\n";
    out << "stride=" << stride << "\n";
    out << "trials=" << trials << "\n";
    out << "window=" << window << "\n";
    out << "seed=" << master_seed << "\n";
    out << "init_seed=" << init_seed << "\n";
    out << "out=" << out_prefix << "\n";
    return out.str();
}

Topology ExperimentConfig::build_topology() const {
    if (graph_file) {
        std::ifstream in(*graph_file);
        if (!in) throw ValidationError("cannot open graph file '" + *graph_file + "'");
        return load_edge_list(in);
    }
    return generate(graph).topology;
}

ConfigParse parse_config(const std::string& text) {
    ConfigParse result;
    ExperimentConfig cfg;
    bool saw_graph = false, saw_transmit = false, saw_alpha = false, saw_noise = false,
         saw_init = false, saw_steps = false;

    const auto fail = [&](int line, const std::string& msg) {
        result.errors.push_back({line, msg});
    };

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(line_no, "expected key=value, got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "graph") {
                if (value.rfind("file:", 0) == 0) {
                    cfg.graph_file = value.substr(5);
                    if (cfg.graph_file->empty()) {
                        throw ValidationError("graph=file: needs a path");
                    }
                } else {
                    cfg.graph = GraphSpec::parse(value);
                    cfg.graph_file.reset();
                }
                saw_graph = true;
            } else if (key == "transmit") {
                cfg.transmit = TransmitFunction::parse(value);
                saw_transmit = true;
            } else if (key == "alpha") {
                cfg.schedule = Schedule::parse(value);
                saw_alpha = true;
            } else if (key == "noise") {
                cfg.noise = NoiseSpec::parse(value);
                saw_noise = true;
            } else if (key == "init") {
                cfg.init = InitSpec::parse(value);
                saw_init = true;
            } else if (key == "T") {
                cfg.steps = strict_int(value);
                if (cfg.steps < 0) throw ValidationError("T must be >= 0");
                saw_steps = true;
            } else if (key == "stride") {
                cfg.stride = strict_int(value);
                if (cfg.stride < 1) throw ValidationError("stride must be >= 1");
            } else if (key == "trials") {
                cfg.trials = static_cast<int>(strict_int(value));
                if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
            } else if (key == "window") {
                cfg.window = static_cast<int>(strict_int(value));
                if (cfg.window < 1) throw ValidationError("window must be >= 1");
            } else if (key == "seed") {
                cfg.master_seed = strict_uint(value);
            } else if (key == "init_seed") {
                cfg.init_seed = strict_uint(value);
            } else if (key == "out") {
                if (value.empty()) throw ValidationError("out must be non-empty");
                cfg.out_prefix = value;
            } else {
                fail(line_no, "unknown key '" + key + "'");
            }
        } catch (const ValidationError& e) {
            fail(line_no, e.what());
        } catch (const std::exception&) {
            fail(line_no, "malformed value for '" + key + "': '" + value + "'");
        }
    }

    if (!saw_graph) fail(0, "missing required key 'graph'");
    if (!saw_transmit) fail(0, "missing required key 'transmit'");
    if (!saw_alpha) fail(0, "missing required key 'alpha'");
    if (!saw_noise) fail(0, "missing required key 'noise'");
    if (!saw_init) fail(0, "missing required key 'init'");
    if (!saw_steps) fail(0, "missing required key 'T'");

    if (result.errors.empty()) result.config = std::move(cfg);
    return result;
}

RunConfig make_run_config(const ExperimentConfig& cfg, const Topology& topology) {
    RunConfig rc;
    rc.topology = &topology;
    rc.transmit = cfg.transmit;
    rc.schedule = cfg.schedule;
    rc.noise = cfg.noise;
    rc.x0 = init_measurements(topology.node_count(), cfg.init, cfg.init_seed);
    rc.steps = cfg.steps;
    rc.record_every = cfg.stride;
    rc.noise_seed = cfg.master_seed;
    rc.trial = 0;
    return rc;
}

}  // namespace nlc

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlc/dynamics.hpp"
#include "nlc/schedule.hpp"
#include "nlc/topology.hpp"
#include "nlc/transmit.hpp"

namespace nlc {

/// One experiment, fully pinned: every seed explicit, no wall-clock entropy.
/// Round-trips losslessly through the line-oriented `key=value` text form.
struct ExperimentConfig {
    GraphSpec graph;
    std::optional<std::string> graph_file;  // overrides graph when set
    TransmitFunction transmit = TransmitFunction::identity();
    Schedule schedule = Schedule::make_inverse_t();
    NoiseSpec noise;
    InitSpec init;
    std::int64_t steps = 0;
    std::int64_t stride = 1;
    int trials = 1;
    int window = 100;
    std::uint64_t master_seed = 42;   // channel noise streams
    std::uint64_t init_seed = 1001;   // initial measurements
    std::string out_prefix = "nlc";

    bool operator==(const ExperimentConfig&) const = default;

    std::string render() const;

    /// Loads the topology (generating or reading the edge-list file).
    Topology build_topology() const;
};

struct ParseIssue {
    int line = 0;  // 0 when not tied to a specific line
    std::string message;
};

struct ConfigParse {
    std::optional<ExperimentConfig> config;
    std::vector<ParseIssue> errors;  // all of them, not just the first

    bool ok() const { return errors.empty(); }
};

/// Parses `key=value` lines; `#` starts a comment. Unknown keys, malformed
/// values and missing required keys are all reported with line numbers.
ConfigParse parse_config(const std::string& text);

/// Wires an experiment onto a topology: draws the initial measurements and
/// carries the seeds over to the dynamics.
RunConfig make_run_config(const ExperimentConfig& cfg, const Topology& topology);

}  // namespace nlc

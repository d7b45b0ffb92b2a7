#pragma once

#include <string>
#include <vector>

#include "nlc/analysis.hpp"
#include "nlc/config.hpp"

namespace nlc::presets {

// Defaults shared by every bundled experiment; documented in the README.
inline constexpr std::uint64_t kGraphSeed = 42;
inline constexpr std::uint64_t kInitSeed = 1001;
inline constexpr std::uint64_t kNoiseSeed = 42;

struct FigureArm {
    std::string label;
    ExperimentConfig config;
};

struct FigurePreset {
    int number = 0;
    std::string title;
    bool monte_carlo = false;  // arms aggregate trials instead of one run
    std::vector<FigureArm> arms;
};

/// The bundled experiments, numbered 1..8. All parameters pinned; the
/// override hooks (seed/trials) come in through the CLI.
FigurePreset figure_preset(int number);

/// Builds the arm's McConfig (Monte Carlo presets only).
McConfig make_mc_config(const ExperimentConfig& cfg, const Topology& topology,
                        int threads);

struct FigureOutput {
    std::vector<std::string> files_written;
    std::string summary;  // also written to <prefix>fig<N>_summary.txt
};

/// Runs all arms and writes the CSVs + summary under the prefix.
FigureOutput run_figure(const FigurePreset& preset, const std::string& out_prefix,
                        int threads);

}  // namespace nlc::presets

#pragma once

#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "nlc/dynamics.hpp"

namespace nlc {

/// CSV writer with the output contract pinned: '.' decimal separator, LF
/// line endings, 17 significant digits so every double round-trips.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void header(std::span<const std::string> columns);
    void row(std::span<const double> values);
    void row(std::int64_t t, std::span<const double> values);

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
};

std::string format_g17(double v);

/// Trajectory export: `t,x_1,...,x_N,err_norm,avg`, one row per recorded step.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Mean-error curve export: `t,mean_err_norm`.
void write_curve_csv(const std::string& path, std::span<const std::int64_t> times,
                     std::span<const double> curve);

/// Creates the parent directory of a path prefix when one is embedded in it.
void ensure_parent_dir(const std::string& path_prefix);

}  // namespace nlc

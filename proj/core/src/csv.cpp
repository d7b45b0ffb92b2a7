#include "nlc/csv.hpp"

#include <cstdio>
#include <filesystem>

#include "nlc/errors.hpp"

namespace nlc {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw ValidationError("cannot open output file '" + path + "'");
}

void CsvWriter::header(std::span<const std::string> columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_g17(values[i]);
    }
    out_ << '\n';
}

void CsvWriter::row(std::int64_t t, std::span<const double> values) {
    out_ << t;
    for (double v : values) out_ << ',' << format_g17(v);
    out_ << '\n';
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    CsvWriter csv(path);
    std::vector<std::string> cols{"t"};
    const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    for (std::size_t i = 1; i <= n; ++i) cols.push_back("x_" + std::to_string(i));
    cols.push_back("err_norm");
    cols.push_back("avg");
    csv.header(cols);
    std::vector<double> row(n + 2);
    for (std::size_t r = 0; r < traj.times.size(); ++r) {
        for (std::size_t i = 0; i < n; ++i) row[i] = traj.states[r][i];
        row[n] = traj.err_norm[r];
        row[n + 1] = traj.avg[r];
        csv.row(traj.times[r], row);
    }
}

void write_curve_csv(const std::string& path, std::span<const std::int64_t> times,
                     std::span<const double> curve) {
    CsvWriter csv(path);
    const std::vector<std::string> cols{"t", "mean_err_norm"};
    csv.header(cols);
    for (std::size_t r = 0; r < times.size(); ++r) {
        const double v = curve[r];
        csv.row(times[r], std::span<const double>(&v, 1));
    }
}

void ensure_parent_dir(const std::string& path_prefix) {
    const std::filesystem::path p(path_prefix);
    if (p.has_parent_path() && !p.parent_path().empty()) {
        std::filesystem::create_directories(p.parent_path());
    }
}

}  // namespace nlc

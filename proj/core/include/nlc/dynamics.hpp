#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlc/schedule.hpp"
#include "nlc/topology.hpp"
#include "nlc/transmit.hpp"

namespace nlc {

enum class NoiseKind { none, per_edge_gaussian, vector_gaussian };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::none;
    double sigma2 = 0.0;

    static NoiseSpec parse(const std::string& designator);
    std::string designator() const;

    bool operator==(const NoiseSpec&) const = default;
};

struct InitSpec {
    double theta = 0.0;
    double sensing_std = 0.0;
    std::optional<double> target_mean;

    static InitSpec parse(const std::string& designator);
    std::string designator() const;

    bool operator==(const InitSpec&) const = default;
};

/// x_i(0) = theta + N(0, sensing_std^2), deterministic per seed. When a
/// target mean is given, all entries are shifted so the sample average hits
/// it exactly (a residual pass squeezes out the rounding of the first shift).
std::vector<double> init_measurements(int n, const InitSpec& init, std::uint64_t seed);

/// Receiver-side aggregation: component i is minus the sum of the draws on
/// edges arriving at i. Draws are ordered by (receiver, sender ascending);
/// there are 2 * edge_count() of them, one per ordered neighbor pair.
std::vector<double> aggregate_noise(const Topology& t, std::span<const double> ordered_draws);

/// One update of the consensus recursion:
///   X' = X - alpha_t * (L h(X) + noise).
/// Throws DivergenceError (with the given step index) if the new state
/// leaves the finite budget.
std::vector<double> step(std::span<const double> state, const Topology& t,
                         const TransmitFunction& f, double alpha_t,
                         std::span<const double> noise, std::int64_t step_index = 0);

struct RunConfig {
    const Topology* topology = nullptr;
    TransmitFunction transmit = TransmitFunction::identity();
    Schedule schedule = Schedule::make_inverse_t();
    NoiseSpec noise;
    std::vector<double> x0;
    std::int64_t steps = 0;
    std::int64_t record_every = 1;
    std::uint64_t noise_seed = 0;  // master seed for channel noise
    std::uint64_t trial = 0;       // stream id; Monte Carlo trial index
    double lambda_max_hint = 0.0;  // skips the eigensolve in the step-bound check
};

struct Trajectory {
    std::vector<std::int64_t> times;
    std::vector<std::vector<double>> states;  // one recorded state per time
    std::vector<double> err_norm;             // ||X(t) - xbar(0) 1||
    std::vector<double> avg;                  // xbar(t)
    double initial_avg = 0.0;
    std::vector<std::string> warnings;
};

/// Executes the recursion for the configured horizon; bit-deterministic
/// given seeds. Records t = 0, every `record_every`-th step, and the final
/// step. Emits warnings when a noisy run uses a non-decreasing schedule or a
/// noiseless constant step exceeds 2 / (c * lambda_max).
Trajectory run(const RunConfig& cfg);

/// max over recorded states of h(x_i(t))^2.
double peak_power_audit(const Trajectory& traj, const TransmitFunction& f);

}  // namespace nlc

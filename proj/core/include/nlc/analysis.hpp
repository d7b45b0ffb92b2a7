#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nlc/dynamics.hpp"
#include "nlc/matrix.hpp"
#include "nlc/spectrum.hpp"

namespace nlc {

/// ||X - target * 1||.
double error_norm(std::span<const double> state, double target);

/// Two independent routes to the dissipation functional:
///   quadratic = 2 x^T L h(x)           (dense Laplacian product)
///   pairwise  = 2 sum_edges (x_i - x_j)(h(x_i) - h(x_j))
/// They agree up to rounding, and pairwise is strictly positive off the
/// consensus line for a strictly increasing h on a connected graph.
struct PhiDiagnostic {
    double quadratic = 0.0;
    double pairwise = 0.0;
};

PhiDiagnostic phi_diagnostic(const Topology& t, const TransmitFunction& f,
                             std::span<const double> state);

/// Worst-case mean-squared error of the consensus limit under per-edge noise:
/// (N d_max sigma2 / N^2) * sum alpha^2(t). steps = nullopt takes the full
/// series (errors out for a constant schedule).
double mse_bound(const Topology& t, const Schedule& schedule, double sigma2,
                 std::optional<std::int64_t> steps);

/// sup_t E||n(t)||^2 for a noise model on a topology.
double noise_second_moment_bound(const Topology& t, const NoiseSpec& noise);

/// mse_bound with the second-moment bound matched to the noise model.
double mse_bound_for_noise(const Topology& t, const Schedule& schedule,
                           const NoiseSpec& noise, std::optional<std::int64_t> steps);

struct McConfig {
    RunConfig base;       // trial field is ignored; trials index the streams
    int trials = 2;
    int trial_base = 0;   // first trial index (lets callers re-run subsets)
    int window = 100;     // recorded steps averaged into the limit estimate
    int threads = 0;      // 0 = sequential
};

struct McSummary {
    int trials = 0;
    double initial_avg = 0.0;
    double mean_final_avg = 0.0;   // mean over trials of xbar(T)
    double mean_theta_hat = 0.0;   // window-averaged limit estimates
    double stderr_theta_hat = 0.0;
    double empirical_mse = 0.0;    // mean of (theta_hat - xbar(0))^2
    double mse_bound = 0.0;
    std::vector<std::int64_t> times;
    std::vector<std::vector<double>> mean_state_curve;  // E[X(t)] per recorded t
    std::vector<double> mean_error_curve;               // ||E[X(t)] - xbar(0) 1||
    Matrix sample_cov_scaled;  // covariance of sqrt(T) (X(T) - theta_hat 1)
    std::vector<int> divergent_trials;  // non-empty means the run is unusable
};

/// Seeded Monte Carlo over independent trials. Trials share the initial
/// state; channel noise streams are keyed by trial index, so arms that
/// differ only in the transmit map see common random numbers. Reduction is
/// compensated and always in trial order, making the result independent of
/// the thread count.
McSummary monte_carlo(const McConfig& cfg);

struct NormalityReport {
    int trials = 0;
    std::int64_t steps = 0;
    double theta0 = 0.0;
    double gain = 0.0;
    std::vector<double> lambdas;     // modes 2..N
    std::vector<double> theory_var;  // per-mode asymptotic variance
    std::vector<double> sample_var;  // across trials, of sqrt(T) Phi^T (X(T) - xbar(T) 1)
    std::vector<double> rel_dev;
    double max_rel_dev = 0.0;
};

/// Empirical check of the asymptotic mode variances. Requires an a/t
/// schedule, vector noise, and a valid gain (2 a h'(theta0) lambda_2 > 1);
/// refuses to run otherwise.
NormalityReport normality_check(const McConfig& cfg, const Spectrum& spec);

}  // namespace nlc

#include "nlc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "nlc/errors.hpp"

namespace nlc {

namespace {

// Neumaier compensated accumulator; fixed-order reductions stay exact enough
// to be bit-stable across thread counts.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

// Runs body(trial) for trials [base, base+count) in blocks of `threads`,
// joining each block before the next. Callers reduce in trial order.
template <typename Body>
void for_each_trial_block(int base, int count, int threads, const Body& body) {
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(base + i);
        return;
    }
    int done = 0;
    while (done < count) {
        const int block = std::min(threads, count - done);
        std::vector<std::thread> pool;
        pool.reserve(block);
        for (int k = 0; k < block; ++k) {
            pool.emplace_back([&body, trial = base + done + k] { body(trial); });
        }
        for (auto& th : pool) th.join();
        done += block;
    }
}

double window_theta_hat(const Trajectory& traj, int window) {
    const int recorded = static_cast<int>(traj.avg.size());
    const int take = std::min(window, recorded);
    double s = 0.0;
    for (int i = recorded - take; i < recorded; ++i) s += traj.avg[i];
    return s / take;
}

}  // namespace

double error_norm(std::span<const double> state, double target) {
    double s = 0.0;
    for (double v : state) {
        const double d = v - target;
        s += d * d;
    }
    return std::sqrt(s);
}

PhiDiagnostic phi_diagnostic(const Topology& t, const TransmitFunction& f,
                             std::span<const double> state) {
    const int n = t.node_count();
    if (static_cast<int>(state.size()) != n) {
        throw ValidationError("phi_diagnostic: dimension mismatch");
    }
    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) h[i] = f(state[i]);

    PhiDiagnostic out;
    const Matrix L = laplacian(t);
    const std::vector<double> lh = L.multiply(h);
    double quad = 0.0;
    for (int i = 0; i < n; ++i) quad += state[i] * lh[i];
    out.quadratic = 2.0 * quad;

    double pair = 0.0;
    for (const auto& [i, j] : t.edges()) {
        pair += (state[i] - state[j]) * (h[i] - h[j]);
    }
    out.pairwise = 2.0 * pair;
    return out;
}

double mse_bound(const Topology& t, const Schedule& schedule, double sigma2,
                 std::optional<std::int64_t> steps) {
    if (sigma2 < 0.0) throw ValidationError("mse_bound: sigma2 must be >= 0");
    const double n = static_cast<double>(t.node_count());
    const double mu = n * t.max_degree() * sigma2;
    if (mu == 0.0) return 0.0;
    return mu / (n * n) * schedule.sum_sq(steps);
}

double noise_second_moment_bound(const Topology& t, const NoiseSpec& noise) {
    const double n = static_cast<double>(t.node_count());
    switch (noise.kind) {
        case NoiseKind::none: return 0.0;
        case NoiseKind::per_edge_gaussian: return n * t.max_degree() * noise.sigma2;
        case NoiseKind::vector_gaussian: return n * noise.sigma2;
    }
    return 0.0;
}

double mse_bound_for_noise(const Topology& t, const Schedule& schedule,
                           const NoiseSpec& noise, std::optional<std::int64_t> steps) {
    const double mu = noise_second_moment_bound(t, noise);
    if (mu == 0.0) return 0.0;
    const double n = static_cast<double>(t.node_count());
    return mu / (n * n) * schedule.sum_sq(steps);
}

McSummary monte_carlo(const McConfig& cfg) {
    if (cfg.trials < 2) throw ValidationError("monte_carlo: need at least 2 trials");
    if (cfg.window < 1) throw ValidationError("monte_carlo: window must be >= 1");
    const Topology& topo = *cfg.base.topology;
    const int n = topo.node_count();

    McSummary out;
    out.trials = cfg.trials;

    RunConfig base = cfg.base;
    if (base.lambda_max_hint <= 0.0) {
        // only the noiseless constant-step mode consults the hint
        if (base.noise.kind == NoiseKind::none && base.schedule.kind == ScheduleKind::constant) {
            base.lambda_max_hint = spectrum(laplacian(topo)).lambda_max();
        } else {
            base.lambda_max_hint = 1.0;
        }
    }

    const double scale = std::sqrt(static_cast<double>(std::max<std::int64_t>(cfg.base.steps, 1)));

    struct TrialResult {
        Trajectory traj;
        bool diverged = false;
        std::int64_t diverged_at = 0;
    };

    // Recording grid of the real horizon.
    std::vector<std::int64_t> grid;
    {
        for (std::int64_t t = 0; t < cfg.base.steps; t += cfg.base.record_every) grid.push_back(t);
        if (grid.empty() || grid.back() != cfg.base.steps) grid.push_back(cfg.base.steps);
    }
    const int recorded = static_cast<int>(grid.size());
    out.times = grid;

    std::vector<Kahan> state_acc(static_cast<std::size_t>(recorded) * n);
    std::vector<Kahan> dev_sum(n), dev_outer(static_cast<std::size_t>(n) * n);
    Kahan theta_sum, theta_sq_sum, mse_sum, final_avg_sum;

    const int block_size = std::max(1, cfg.threads);
    std::vector<TrialResult> block(block_size);

    int done = 0;
    while (done < cfg.trials) {
        const int count = std::min(block_size, cfg.trials - done);
        for_each_trial_block(done, count, cfg.threads, [&](int trial) {
            TrialResult& slot = block[trial - done];
            RunConfig rc = base;
            rc.trial = static_cast<std::uint64_t>(cfg.trial_base + trial);
            try {
                slot.traj = run(rc);
                slot.diverged = false;
            } catch (const DivergenceError& e) {
                slot.diverged = true;
                slot.diverged_at = e.step();
            }
        });
        for (int k = 0; k < count; ++k) {
            const int trial = done + k;
            const TrialResult& res = block[k];
            if (res.diverged) {
                out.divergent_trials.push_back(cfg.trial_base + trial);
                const double poison = std::numeric_limits<double>::quiet_NaN();
                theta_sum.add(poison);
                theta_sq_sum.add(poison);
                mse_sum.add(poison);
                final_avg_sum.add(poison);
                continue;
            }
            const Trajectory& traj = res.traj;
            if (trial == 0) out.initial_avg = traj.initial_avg;
            for (int r = 0; r < recorded; ++r) {
                for (int i = 0; i < n; ++i) {
                    state_acc[static_cast<std::size_t>(r) * n + i].add(traj.states[r][i]);
                }
            }
            const double theta_hat = window_theta_hat(traj, cfg.window);
            const double dev0 = theta_hat - traj.initial_avg;
            theta_sum.add(theta_hat);
            theta_sq_sum.add(theta_hat * theta_hat);
            mse_sum.add(dev0 * dev0);
            final_avg_sum.add(traj.avg.back());
            const auto& xf = traj.states.back();
            for (int i = 0; i < n; ++i) {
                const double di = scale * (xf[i] - theta_hat);
                dev_sum[i].add(di);
                for (int j = 0; j < n; ++j) {
                    const double dj = scale * (xf[j] - theta_hat);
                    dev_outer[static_cast<std::size_t>(i) * n + j].add(di * dj);
                }
            }
        }
        done += count;
    }

    const double m = static_cast<double>(cfg.trials);
    out.mean_theta_hat = theta_sum.value() / m;
    out.mean_final_avg = final_avg_sum.value() / m;
    out.empirical_mse = mse_sum.value() / m;
    const double var_theta =
        std::max(0.0, (theta_sq_sum.value() - m * out.mean_theta_hat * out.mean_theta_hat) /
                          (m - 1.0));
    out.stderr_theta_hat = std::sqrt(var_theta / m);

    out.mean_state_curve.assign(recorded, std::vector<double>(n, 0.0));
    out.mean_error_curve.resize(recorded);
    for (int r = 0; r < recorded; ++r) {
        for (int i = 0; i < n; ++i) {
            out.mean_state_curve[r][i] = state_acc[static_cast<std::size_t>(r) * n + i].value() / m;
        }
        out.mean_error_curve[r] = error_norm(out.mean_state_curve[r], out.initial_avg);
    }

    out.sample_cov_scaled = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        const double mi = dev_sum[i].value() / m;
        for (int j = 0; j < n; ++j) {
            const double mj = dev_sum[j].value() / m;
            out.sample_cov_scaled(i, j) =
                (dev_outer[static_cast<std::size_t>(i) * n + j].value() - m * mi * mj) / (m - 1.0);
        }
    }

    try {
        out.mse_bound = mse_bound_for_noise(topo, cfg.base.schedule, cfg.base.noise,
                                            cfg.base.steps);
    } catch (const ValidationError&) {
        out.mse_bound = std::numeric_limits<double>::infinity();
    }

    if (!out.divergent_trials.empty()) {
        const double poison = std::numeric_limits<double>::quiet_NaN();
        for (auto& row : out.mean_state_curve) std::fill(row.begin(), row.end(), poison);
        std::fill(out.mean_error_curve.begin(), out.mean_error_curve.end(), poison);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.sample_cov_scaled(i, j) = poison;
    }
    return out;
}

NormalityReport normality_check(const McConfig& cfg, const Spectrum& spec) {
    const RunConfig& base = cfg.base;
    if (base.noise.kind != NoiseKind::vector_gaussian) {
        throw ValidationError("normality_check: requires vector_gaussian noise");
    }
    if (!base.schedule.decreasing()) {
        throw ValidationError("normality_check: requires an a/t step schedule");
    }
    if (cfg.trials < 2) throw ValidationError("normality_check: need at least 2 trials");
    const Topology& topo = *base.topology;
    const int n = topo.node_count();
    if (spec.size() != n) throw ValidationError("normality_check: spectrum/topology mismatch");

    NormalityReport rep;
    rep.trials = cfg.trials;
    rep.steps = base.steps;
    rep.gain = base.schedule.gain();
    {
        double s = 0.0;
        for (double v : base.x0) s += v;
        rep.theta0 = s / n;
    }
    const double h_prime = base.transmit.derivative(rep.theta0);
    const double lam2 = spec.fiedler();
    if (!(2.0 * rep.gain * h_prime * lam2 > 1.0)) {
        throw ValidationError(
            "normality_check: gain outside the validity region, needs "
            "2 a h'(theta0) lambda_2 > 1");
    }

    rep.lambdas.assign(spec.eigenvalues.begin() + 1, spec.eigenvalues.end());
    rep.theory_var.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        rep.theory_var[i] = rep.gain * rep.gain * base.noise.sigma2 /
                            (2.0 * rep.gain * h_prime * rep.lambdas[i] - 1.0);
    }

    const Matrix phi = spec.phi();
    const double scale = std::sqrt(static_cast<double>(base.steps));

    std::vector<std::vector<double>> projections(cfg.trials);
    RunConfig rc_base = base;
    rc_base.record_every = std::max<std::int64_t>(base.steps, 1);
    rc_base.lambda_max_hint = rc_base.lambda_max_hint > 0.0 ? rc_base.lambda_max_hint : 1.0;
    for_each_trial_block(0, cfg.trials, cfg.threads, [&](int trial) {
        RunConfig rc = rc_base;
        rc.trial = static_cast<std::uint64_t>(cfg.trial_base + trial);
        const Trajectory traj = run(rc);
        const auto& xf = traj.states.back();
        const double xbar_f = traj.avg.back();
        std::vector<double> y(n - 1, 0.0);
        for (int kcol = 0; kcol < n - 1; ++kcol) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += phi(i, kcol) * (xf[i] - xbar_f);
            y[kcol] = scale * acc;
        }
        projections[trial] = std::move(y);
    });

    rep.sample_var.resize(n - 1);
    rep.rel_dev.resize(n - 1);
    rep.max_rel_dev = 0.0;
    for (int kcol = 0; kcol < n - 1; ++kcol) {
        Kahan s, s2;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const double v = projections[trial][kcol];
            s.add(v);
            s2.add(v * v);
        }
        const double m = static_cast<double>(cfg.trials);
        const double mean = s.value() / m;
        rep.sample_var[kcol] = std::max(0.0, (s2.value() - m * mean * mean) / (m - 1.0));
        rep.rel_dev[kcol] = std::fabs(rep.sample_var[kcol] - rep.theory_var[kcol]) /
                            rep.theory_var[kcol];
        rep.max_rel_dev = std::max(rep.max_rel_dev, rep.rel_dev[kcol]);
    }
    return rep;
}

}  // namespace nlc

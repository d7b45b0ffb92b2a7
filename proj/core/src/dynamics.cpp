#include "nlc/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "nlc/errors.hpp"
#include "nlc/rng.hpp"
#include "nlc/spectrum.hpp"

namespace nlc {

namespace {

constexpr double kDivergenceBudget = 1e12;

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

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

}  // namespace

NoiseSpec NoiseSpec::parse(const std::string& designator) {
    const auto parts = split(designator, ':');
    if (parts[0] == "none") {
        if (parts.size() != 1) throw ValidationError("noise designator 'none' takes no parameters");
        return {};
    }
    NoiseKind kind;
    if (parts[0] == "per_edge_gaussian") kind = NoiseKind::per_edge_gaussian;
    else if (parts[0] == "vector_gaussian") kind = NoiseKind::vector_gaussian;
    else throw ValidationError("unknown noise kind '" + parts[0] + "'");
    if (parts.size() != 2) {
        throw ValidationError("noise designator '" + designator + "': expected kind:sigma2");
    }
    double sigma2;
    try {
        sigma2 = std::stod(parts[1]);
    } catch (...) {
        throw ValidationError("noise designator '" + designator + "': bad variance");
    }
    if (sigma2 < 0.0) throw ValidationError("noise: variance must be >= 0");
    return {kind, sigma2};
}

std::string NoiseSpec::designator() const {
    switch (kind) {
        case NoiseKind::none: return "none";
        case NoiseKind::per_edge_gaussian: return "per_edge_gaussian:" + format_double(sigma2);
        case NoiseKind::vector_gaussian: return "vector_gaussian:" + format_double(sigma2);
    }
    return "none";
}

InitSpec InitSpec::parse(const std::string& designator) {
    const auto parts = split(designator, ':');
    if (parts.size() != 2 && parts.size() != 3) {
        throw ValidationError("init designator '" + designator +
                              "': expected theta:std[:target_mean]");
    }
    InitSpec init;
    try {
        init.theta = std::stod(parts[0]);
        init.sensing_std = std::stod(parts[1]);
        if (parts.size() == 3) init.target_mean = std::stod(parts[2]);
    } catch (...) {
        throw ValidationError("init designator '" + designator + "': bad number");
    }
    if (init.sensing_std < 0.0) throw ValidationError("init: sensing std must be >= 0");
    return init;
}

std::string InitSpec::designator() const {
    std::string out = format_double(theta) + ":" + format_double(sensing_std);
    if (target_mean) out += ":" + format_double(*target_mean);
    return out;
}

std::vector<double> init_measurements(int n, const InitSpec& init, std::uint64_t seed) {
    if (n < 1) throw ValidationError("init_measurements: n must be >= 1");
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
        const double noise =
            init.sensing_std == 0.0
                ? 0.0
                : init.sensing_std * rng::normal(seed, 0, rng::Substream::init, 0, i);
        x[i] = init.theta + noise;
    }
    if (init.target_mean) {
        for (int pass = 0; pass < 2; ++pass) {
            const double shift = *init.target_mean - mean(x);
            for (double& v : x) v += shift;
        }
    }
    return x;
}

std::vector<double> aggregate_noise(const Topology& t, std::span<const double> ordered_draws) {
    const std::size_t expected = 2 * t.edge_count();
    if (ordered_draws.size() != expected) {
        throw ValidationError("aggregate_noise: expected " + std::to_string(expected) +
                              " draws, got " + std::to_string(ordered_draws.size()));
    }
    std::vector<double> n(t.node_count(), 0.0);
    std::size_t k = 0;
    for (int i = 0; i < t.node_count(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < t.neighbors(i).size(); ++j) acc += ordered_draws[k++];
        n[i] = -acc;
    }
    return n;
}

std::vector<double> step(std::span<const double> state, const Topology& t,
                         const TransmitFunction& f, double alpha_t,
                         std::span<const double> noise, std::int64_t step_index) {
    const int n = t.node_count();
    if (static_cast<int>(state.size()) != n ||
        (!noise.empty() && static_cast<int>(noise.size()) != n)) {
        throw ValidationError("step: dimension mismatch");
    }
    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) h[i] = f(state[i]);

    std::vector<double> next(n);
    for (int i = 0; i < n; ++i) {
        double flow = 0.0;  // (L h(X))_i = sum_j (h_i - h_j) over neighbors
        for (int j : t.neighbors(i)) flow += h[i] - h[j];
        const double drift = noise.empty() ? flow : flow + noise[i];
        const double v = state[i] - alpha_t * drift;
        if (!std::isfinite(v) || std::fabs(v) > kDivergenceBudget) {
            throw DivergenceError(step_index, "state diverged at step " +
                                                  std::to_string(step_index) + ", node " +
                                                  std::to_string(i));
        }
        next[i] = v;
    }
    return next;
}

Trajectory run(const RunConfig& cfg) {
    if (cfg.topology == nullptr) throw ValidationError("run: topology is required");
    const Topology& t = *cfg.topology;
    const int n = t.node_count();
    if (static_cast<int>(cfg.x0.size()) != n) {
        throw ValidationError("run: initial state size does not match topology");
    }
    if (cfg.steps < 0) throw ValidationError("run: steps must be >= 0");
    if (cfg.record_every < 1) throw ValidationError("run: record_every must be >= 1");

    Trajectory traj;
    traj.initial_avg = mean(cfg.x0);

    if (cfg.noise.kind != NoiseKind::none && !cfg.schedule.decreasing()) {
        traj.warnings.push_back(
            "noisy run with a constant step size: the variance of the state does not "
            "vanish and the run may diverge");
    }
    if (cfg.noise.kind == NoiseKind::none && cfg.schedule.kind == ScheduleKind::constant) {
        const double lam_max = cfg.lambda_max_hint > 0.0
                                   ? cfg.lambda_max_hint
                                   : spectrum(laplacian(t)).lambda_max();
        const double bound = 2.0 / (cfg.transmit.derivative_bound() * lam_max);
        if (!(cfg.schedule.alpha < bound)) {
            std::ostringstream msg;
            msg << "constant step " << cfg.schedule.alpha
                << " violates the stability bound 2/(c*lambda_max) = " << bound;
            traj.warnings.push_back(msg.str());
        }
    }

    const double sigma = std::sqrt(cfg.noise.sigma2);
    std::vector<double> state = cfg.x0;
    std::vector<double> noise;
    std::vector<double> draws;

    const auto record = [&](std::int64_t time) {
        traj.times.push_back(time);
        traj.states.push_back(state);
        double err = 0.0;
        for (double v : state) {
            const double d = v - traj.initial_avg;
            err += d * d;
        }
        traj.err_norm.push_back(std::sqrt(err));
        traj.avg.push_back(mean(state));
    };

    record(0);
    for (std::int64_t t_idx = 0; t_idx < cfg.steps; ++t_idx) {
        const double alpha_t = cfg.schedule.at(t_idx);
        switch (cfg.noise.kind) {
            case NoiseKind::none:
                noise.clear();
                break;
            case NoiseKind::per_edge_gaussian: {
                draws.resize(2 * t.edge_count());
                for (std::size_t k = 0; k < draws.size(); ++k) {
                    draws[k] = sigma * rng::normal(cfg.noise_seed, cfg.trial,
                                                   rng::Substream::edge_noise,
                                                   static_cast<std::uint64_t>(t_idx), k);
                }
                noise = aggregate_noise(t, draws);
                break;
            }
            case NoiseKind::vector_gaussian: {
                noise.resize(n);
                for (int i = 0; i < n; ++i) {
                    noise[i] = sigma * rng::normal(cfg.noise_seed, cfg.trial,
                                                   rng::Substream::vector_noise,
                                                   static_cast<std::uint64_t>(t_idx),
                                                   static_cast<std::uint64_t>(i));
                }
                break;
            }
        }
        state = step(state, t, cfg.transmit, alpha_t, noise, t_idx);
        const std::int64_t now = t_idx + 1;
        if (now % cfg.record_every == 0 || now == cfg.steps) record(now);
    }
    return traj;
}

double peak_power_audit(const Trajectory& traj, const TransmitFunction& f) {
    double peak = 0.0;
    for (const auto& state : traj.states) {
        for (double v : state) peak = std::max(peak, transmit_power(f, v));
    }
    return peak;
}

}  // namespace nlc

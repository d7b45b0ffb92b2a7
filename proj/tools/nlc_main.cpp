#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nlc/analysis.hpp"
#include "nlc/config.hpp"
#include "nlc/covariance.hpp"
#include "nlc/csv.hpp"
#include "nlc/errors.hpp"
#include "nlc/presets.hpp"
#include "nlc/spectrum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int env_threads() {
    const char* v = std::getenv("NLC_THREADS");
    if (v == nullptr || *v == '\0') return 0;
    try {
        return std::max(0, std::stoi(v));
    } catch (...) {
        throw nlc::ValidationError("NLC_THREADS must be a non-negative integer");
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nlc::ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlc::ExperimentConfig load_config(const std::string& path) {
    const auto parsed = nlc::parse_config(slurp(path));
    if (!parsed.ok()) {
        std::ostringstream msg;
        msg << "config '" << path << "' has " << parsed.errors.size() << " error(s):";
        for (const auto& e : parsed.errors) {
            msg << "\n  ";
            if (e.line > 0) msg << "line " << e.line << ": ";
            msg << e.message;
        }
        throw nlc::ValidationError(msg.str());
    }
    return *parsed.config;
}

struct Overrides {
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
};

void apply(const Overrides& ov, nlc::ExperimentConfig& cfg) {
    if (ov.out) cfg.out_prefix = *ov.out;
    if (ov.seed) cfg.master_seed = *ov.seed;
    if (ov.trials) cfg.trials = *ov.trials;
}

void print_config_echo(std::ostream& out, const nlc::ExperimentConfig& cfg) {
    out << "--- config ---\n" << cfg.render() << "--------------\n";
}

int cmd_spectrum(const std::string& graph_arg, const std::string& config_path) {
    nlc::Topology topology = [&] {
        if (!graph_arg.empty()) {
            return nlc::generate(nlc::GraphSpec::parse(graph_arg)).topology;
        }
        if (config_path.empty()) {
            throw nlc::ValidationError("spectrum: need --graph or --config");
        }
        return load_config(config_path).build_topology();
    }();

    const bool connected = nlc::is_connected(topology);
    const auto spec = nlc::spectrum(nlc::laplacian(topology));
    std::cout << "nodes=" << topology.node_count() << " edges=" << topology.edge_count()
              << " d_max=" << topology.max_degree() << "\n";
    std::cout << "eigenvalues=";
    for (int i = 0; i < spec.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << nlc::format_g17(spec.eigenvalues[i]);
    }
    std::cout << "\n";
    if (topology.node_count() >= 2) {
        std::cout << "lambda_2=" << nlc::format_g17(spec.fiedler()) << "\n";
    }
    std::cout << "lambda_max=" << nlc::format_g17(spec.lambda_max()) << "\n";
    std::cout << (connected ? "connected" : "disconnected") << "\n";
    return connected ? kExitOk : kExitValidation;
}

int cmd_run(const std::string& config_path, const Overrides& ov) {
    nlc::ExperimentConfig cfg = load_config(config_path);
    apply(ov, cfg);
    if (cfg.trials != 1) {
        throw nlc::ValidationError("run: requires trials=1 (use the mc subcommand)");
    }
    const nlc::Topology topology = cfg.build_topology();
    const nlc::RunConfig rc = nlc::make_run_config(cfg, topology);
    const nlc::Trajectory traj = nlc::run(rc);

    nlc::ensure_parent_dir(cfg.out_prefix);
    const std::string csv_path = cfg.out_prefix + "_trajectory.csv";
    nlc::write_trajectory_csv(csv_path, traj);

    std::ostringstream summary;
    print_config_echo(summary, cfg);
    for (const auto& w : traj.warnings) summary << "warning: " << w << "\n";
    summary << "recorded=" << traj.times.size() << "\n";
    summary << "final_avg=" << nlc::format_g17(traj.avg.back()) << "\n";
    summary << "final_err_norm=" << nlc::format_g17(traj.err_norm.back()) << "\n";
    const double peak = nlc::peak_power_audit(traj, cfg.transmit);
    summary << "peak_power=" << nlc::format_g17(peak) << "\n";
    if (cfg.transmit.bounded()) {
        const double cap = cfg.transmit.amplitude_bound();
        summary << "peak_power_cap=" << nlc::format_g17(cap * cap) << "\n";
    }
    const std::string summary_path = cfg.out_prefix + "_summary.txt";
    std::ofstream sf(summary_path, std::ios::binary);
    sf << summary.str();
    std::cout << summary.str();
    std::cout << "wrote " << csv_path << "\n" << "wrote " << summary_path << "\n";
    return kExitOk;
}

int cmd_mc(const std::string& config_path, const Overrides& ov, bool with_normality) {
    nlc::ExperimentConfig cfg = load_config(config_path);
    apply(ov, cfg);
    if (cfg.trials < 2) throw nlc::ValidationError("mc: requires trials >= 2");
    const nlc::Topology topology = cfg.build_topology();
    const int threads = env_threads();
    nlc::McConfig mc = nlc::presets::make_mc_config(cfg, topology, threads);
    const nlc::McSummary s = nlc::monte_carlo(mc);

    nlc::ensure_parent_dir(cfg.out_prefix);
    const std::string curve_path = cfg.out_prefix + "_mean_error.csv";
    nlc::write_curve_csv(curve_path, s.times, s.mean_error_curve);

    std::ostringstream summary;
    print_config_echo(summary, cfg);
    summary << "trials=" << s.trials << "\n";
    summary << "initial_avg=" << nlc::format_g17(s.initial_avg) << "\n";
    summary << "mean_final_avg=" << nlc::format_g17(s.mean_final_avg) << "\n";
    summary << "mean_theta_hat=" << nlc::format_g17(s.mean_theta_hat) << "\n";
    summary << "stderr_theta_hat=" << nlc::format_g17(s.stderr_theta_hat) << "\n";
    summary << "empirical_mse=" << nlc::format_g17(s.empirical_mse) << "\n";
    summary << "mse_bound=" << nlc::format_g17(s.mse_bound) << "\n";
    if (!s.divergent_trials.empty()) {
        summary << "divergent_trials=";
        for (std::size_t i = 0; i < s.divergent_trials.size(); ++i) {
            if (i) summary << ",";
            summary << s.divergent_trials[i];
        }
        summary << "\n";
    }
    const std::string summary_path = cfg.out_prefix + "_summary.txt";
    std::ofstream sf(summary_path, std::ios::binary);
    sf << summary.str();
    std::cout << summary.str();
    std::cout << "wrote " << curve_path << "\n" << "wrote " << summary_path << "\n";

    if (with_normality) {
        const auto spec = nlc::spectrum(nlc::laplacian(topology));
        const auto rep = nlc::normality_check(mc, spec);
        const std::string path = cfg.out_prefix + "_normality.csv";
        nlc::CsvWriter csv(path);
        const std::vector<std::string> cols{"mode", "lambda", "S_theory", "S_empirical",
                                            "rel_dev"};
        csv.header(cols);
        for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
            const std::vector<double> row{static_cast<double>(i + 2), rep.lambdas[i],
                                          rep.theory_var[i], rep.sample_var[i],
                                          rep.rel_dev[i]};
            csv.row(row);
        }
        std::cout << "max_rel_dev=" << nlc::format_g17(rep.max_rel_dev) << "\n";
        std::cout << "wrote " << path << "\n";
    }

    if (!s.divergent_trials.empty()) {
        std::cerr << "error: " << s.divergent_trials.size()
                  << " trial(s) diverged; results are unusable\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_covariance(const std::string& config_path, std::optional<double> gain,
                   std::optional<double> theta0_opt, std::optional<double> sigma2v_opt) {
    const nlc::ExperimentConfig cfg = load_config(config_path);
    const nlc::Topology topology = cfg.build_topology();
    if (!nlc::is_connected(topology)) {
        throw nlc::ValidationError("covariance: graph is disconnected");
    }
    const auto spec = nlc::spectrum(nlc::laplacian(topology));
    const double theta0 = theta0_opt.value_or(cfg.init.target_mean.value_or(cfg.init.theta));
    const double sigma2_v = sigma2v_opt.value_or(cfg.noise.sigma2);

    const double a_star = nlc::optimal_gain(spec, cfg.transmit, theta0);
    const double norm_star =
        nlc::optimal_covariance_norm(spec, cfg.transmit, theta0, sigma2_v);
    std::cout << "theta0=" << nlc::format_g17(theta0)
              << " h_prime=" << nlc::format_g17(cfg.transmit.derivative(theta0))
              << " sigma2_v=" << nlc::format_g17(sigma2_v) << "\n";
    std::cout << "lambda_2=" << nlc::format_g17(spec.fiedler()) << "\n";
    std::cout << "a_star=" << nlc::format_g17(a_star) << "\n";
    std::cout << "optimal_norm=" << nlc::format_g17(norm_star) << "\n";

    const double a = gain.value_or(a_star);
    const auto cov = nlc::asymptotic_covariance(spec, cfg.transmit, theta0, a, sigma2_v);
    std::cout << "a=" << nlc::format_g17(a)
              << " validity=" << (cov.valid ? "ok" : "violated") << "\n";
    if (!cov.valid) {
        std::cerr << "error: gain a=" << nlc::format_g17(a)
                  << " violates the condition 2 a lambda_2(L) h'(theta0) > 1\n";
        return kExitValidation;
    }
    std::cout << "S_diag=";
    for (std::size_t i = 0; i < cov.S_diag.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << nlc::format_g17(cov.S_diag[i]);
    }
    std::cout << "\n";
    std::cout << "spectral_norm=" << nlc::format_g17(cov.spectral_norm) << "\n";

    double residual = 0.0;
    for (std::size_t i = 0; i < cov.S_diag.size(); ++i) {
        const double numeric = nlc::mode_variance_quadrature(
            a, cov.h_prime_theta0, spec.eigenvalues[i + 1], sigma2_v);
        residual = std::max(residual,
                            std::fabs(numeric - cov.S_diag[i]) /
                                std::max(1e-300, std::fabs(cov.S_diag[i])));
    }
    std::cout << "quadrature_residual=" << nlc::format_g17(residual) << "\n";
    return kExitOk;
}

int cmd_figure(int number, const Overrides& ov) {
    auto preset = nlc::presets::figure_preset(number);
    for (auto& arm : preset.arms) {
        if (ov.seed) arm.config.master_seed = *ov.seed;
        if (ov.trials) arm.config.trials = *ov.trials;
    }
    const std::string prefix = ov.out.value_or("nlc_");
    const auto output = nlc::presets::run_figure(preset, prefix, env_threads());
    std::cout << output.summary;
    for (const auto& f : output.files_written) std::cout << "wrote " << f << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator and analysis toolkit for average consensus with bounded "
                 "per-node transmissions"};
    app.require_subcommand(1);

    std::string config_path, graph_arg;
    Overrides ov;
    bool with_normality = false;
    std::optional<double> gain, theta0, sigma2v;
    int figure_number = 1;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* opt = sub->add_option("--config", config_path, "experiment config file");
        if (need_config) opt->required();
        sub->add_option("--out", [&ov](const std::vector<std::string>& v) {
            ov.out = v.front();
            return true;
        }, "output path prefix override");
        sub->add_option("--seed", [&ov](const std::vector<std::string>& v) {
            ov.seed = std::stoull(v.front());
            return true;
        }, "master seed override");
        sub->add_option("--trials", [&ov](const std::vector<std::string>& v) {
            ov.trials = std::stoi(v.front());
            return true;
        }, "trial count override");
    };

    auto* sc_spectrum = app.add_subcommand("spectrum", "graph spectrum report");
    sc_spectrum->add_option("--graph", graph_arg, "graph designator, e.g. complete:10");
    sc_spectrum->add_option("--config", config_path, "experiment config file");

    auto* sc_run = app.add_subcommand("run", "single trajectory to CSV");
    add_common(sc_run, true);

    auto* sc_mc = app.add_subcommand("mc", "seeded Monte Carlo over trials");
    add_common(sc_mc, true);
    sc_mc->add_flag("--normality", with_normality,
                    "also check asymptotic per-mode variances");

    auto* sc_cov = app.add_subcommand("covariance", "asymptotic covariance report");
    sc_cov->add_option("--config", config_path, "experiment config file")->required();
    sc_cov->add_option("--gain", [&gain](const std::vector<std::string>& v) {
        gain = std::stod(v.front());
        return true;
    }, "gain a (defaults to the optimal gain)");
    sc_cov->add_option("--theta0", [&theta0](const std::vector<std::string>& v) {
        theta0 = std::stod(v.front());
        return true;
    }, "linearization point (defaults to the init target mean)");
    sc_cov->add_option("--sigma2v", [&sigma2v](const std::vector<std::string>& v) {
        sigma2v = std::stod(v.front());
        return true;
    }, "noise variance (defaults to the config noise variance)");

    auto* sc_fig = app.add_subcommand("figure", "run a bundled experiment preset (1..8)");
    sc_fig->add_option("number", figure_number, "preset number")->required();
    add_common(sc_fig, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_spectrum->parsed()) return cmd_spectrum(graph_arg, config_path);
        if (sc_run->parsed()) return cmd_run(config_path, ov);
        if (sc_mc->parsed()) return cmd_mc(config_path, ov, with_normality);
        if (sc_cov->parsed()) return cmd_covariance(config_path, gain, theta0, sigma2v);
        if (sc_fig->parsed()) return cmd_figure(figure_number, ov);
    } catch (const nlc::DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const nlc::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const nlc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}

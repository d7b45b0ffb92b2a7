#include "nlc/presets.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nlc/csv.hpp"
#include "nlc/errors.hpp"
#include "nlc/spectrum.hpp"

namespace nlc::presets {

namespace {

ExperimentConfig base75() {
    ExperimentConfig cfg;
    cfg.graph = GraphSpec{GraphFamily::random_geometric, 75, {0.4}, kGraphSeed};
    cfg.master_seed = kNoiseSeed;
    cfg.init_seed = kInitSeed;
    return cfg;
}

ExperimentConfig base10() {
    ExperimentConfig cfg;
    cfg.graph = GraphSpec{GraphFamily::random_geometric, 10, {0.5}, kGraphSeed};
    cfg.master_seed = kNoiseSeed;
    cfg.init_seed = kInitSeed;
    return cfg;
}

void set_init(ExperimentConfig& cfg, double xbar) {
    cfg.init = InitSpec{xbar, 10.0, xbar};
}

std::string rho_label(double rho_db) {
    std::ostringstream s;
    s << "rho" << rho_db << "dB";
    auto text = s.str();
    for (auto& c : text) {
        if (c == '.') c = 'p';
    }
    return text;
}

}  // namespace

FigurePreset figure_preset(int number) {
    FigurePreset preset;
    preset.number = number;
    switch (number) {
        case 1: {
            preset.title = "noiseless consensus, large network (75 nodes, tanh map)";
            ExperimentConfig cfg = base75();
            cfg.transmit = TransmitFunction::parse("tanh:0.01:0");
            cfg.schedule = Schedule::make_constant(1.5);
            set_init(cfg, 76.0);
            cfg.steps = 500;
            preset.arms.push_back({"tanh", cfg});
            break;
        }
        case 2: {
            preset.title = "noiseless error decay for the bounded map catalog";
            for (const char* kind :
                 {"tanh", "arctan", "gudermannian", "algebraic_sigmoid"}) {
                ExperimentConfig cfg = base75();
                cfg.transmit = TransmitFunction::parse(std::string(kind) + ":0.01:0");
                cfg.schedule = Schedule::make_constant(1.5);
                set_init(cfg, 76.0);
                cfg.steps = 500;
                preset.arms.push_back({kind, cfg});
            }
            break;
        }
        case 3: {
            preset.title = "noiseless error decay vs step size (gudermannian map)";
            for (double alpha : {2.0, 4.0, 6.0, 8.0}) {
                ExperimentConfig cfg = base75();
                cfg.transmit = TransmitFunction::parse("gudermannian:0.005:0");
                cfg.schedule = Schedule::make_constant(alpha);
                set_init(cfg, 114.0);
                cfg.steps = 500;
                std::ostringstream label;
                label << "alpha" << alpha;
                preset.arms.push_back({label.str(), cfg});
            }
            break;
        }
        case 4: {
            preset.title = "noisy consensus to a random limit, small network (10 nodes)";
            ExperimentConfig cfg = base10();
            cfg.transmit = TransmitFunction::parse("tanh:0.05:10");
            cfg.schedule = Schedule::make_inverse_t();
            cfg.noise = NoiseSpec{NoiseKind::per_edge_gaussian, 1.0};
            set_init(cfg, 36.24);
            cfg.steps = 1500;
            preset.arms.push_back({"tanh", cfg});
            break;
        }
        case 5: {
            preset.title = "per-neighbor transmit power stays under the peak budget";
            ExperimentConfig cfg = base75();
            cfg.transmit = TransmitFunction::parse("tanh:0.005:7.5");
            cfg.schedule = Schedule::make_inverse_t();
            cfg.noise = NoiseSpec{NoiseKind::vector_gaussian, 0.1};
            set_init(cfg, 102.0);
            cfg.steps = 500;
            preset.arms.push_back({"tanh", cfg});
            break;
        }
        case 6: {
            preset.title = "mean-error decay: arctan vs tanh at equal scale";
            preset.monte_carlo = true;
            for (double xbar : {162.0, 202.0}) {
                for (const char* kind : {"arctan", "tanh"}) {
                    ExperimentConfig cfg = base75();
                    cfg.transmit = TransmitFunction::parse(std::string(kind) + ":0.005:7.5");
                    cfg.schedule = Schedule::make_inverse_t();
                    cfg.noise = NoiseSpec{NoiseKind::vector_gaussian, 1.0};
                    set_init(cfg, xbar);
                    cfg.steps = 600;
                    cfg.stride = 5;
                    cfg.trials = 500;
                    std::ostringstream label;
                    label << kind << "_xbar" << xbar;
                    preset.arms.push_back({label.str(), cfg});
                }
            }
            break;
        }
        case 7: {
            preset.title = "mean-error decay for four maps at equal peak power";
            preset.monte_carlo = true;
            for (const char* kind : {"arctan_normalized", "gudermannian", "tanh",
                                     "algebraic_sigmoid"}) {
                ExperimentConfig cfg = base10();
                cfg.transmit = TransmitFunction::parse(std::string(kind) + ":0.04:5");
                cfg.schedule = Schedule::make_inverse_t();
                cfg.noise = NoiseSpec{NoiseKind::vector_gaussian, 1.0};
                set_init(cfg, 36.24);
                cfg.steps = 250;
                cfg.trials = 500;
                preset.arms.push_back({kind, cfg});
            }
            break;
        }
        case 8: {
            preset.title = "mean error vs peak power budget (algebraic sigmoid)";
            preset.monte_carlo = true;
            for (double rho_db : {0.0, 2.5, 5.0, 7.5, 10.0}) {
                ExperimentConfig cfg = base75();
                cfg.transmit = TransmitFunction::make(TransmitKind::algebraic_sigmoid,
                                                      0.006, rho_db);
                cfg.schedule = Schedule::make_inverse_t();
                cfg.noise = NoiseSpec{NoiseKind::vector_gaussian, 1.0};
                set_init(cfg, 77.0);
                cfg.steps = 100;
                cfg.trials = 500;
                preset.arms.push_back({rho_label(rho_db), cfg});
            }
            break;
        }
        default:
            throw ValidationError("figure preset number must be in 1..8");
    }
    return preset;
}

McConfig make_mc_config(const ExperimentConfig& cfg, const Topology& topology,
                        int threads) {
    McConfig mc;
    mc.base = make_run_config(cfg, topology);
    mc.trials = cfg.trials;
    mc.window = cfg.window;
    mc.threads = threads;
    return mc;
}

FigureOutput run_figure(const FigurePreset& preset, const std::string& out_prefix,
                        int threads) {
    FigureOutput out;
    ensure_parent_dir(out_prefix);
    std::ostringstream summary;
    summary << "preset " << preset.number << ": " << preset.title << "\n";

    const std::string tag = "fig" + std::to_string(preset.number) + "_";

    // arms of one preset share the topology
    const Topology topology = preset.arms.front().config.build_topology();
    summary << "graph: " << preset.arms.front().config.graph.designator()
            << "  nodes=" << topology.node_count() << " edges=" << topology.edge_count()
            << "\n";

    std::vector<std::pair<std::string, McSummary>> mc_results;
    for (const auto& arm : preset.arms) {
        summary << "\n[" << arm.label << "]\n" << arm.config.render();
        if (!preset.monte_carlo) {
            RunConfig rc = make_run_config(arm.config, topology);
            const Trajectory traj = run(rc);
            const std::string path = out_prefix + tag + arm.label + "_trajectory.csv";
            write_trajectory_csv(path, traj);
            out.files_written.push_back(path);
            for (const auto& w : traj.warnings) summary << "warning: " << w << "\n";
            summary << "final_err_norm=" << format_g17(traj.err_norm.back()) << "\n";
            summary << "final_avg=" << format_g17(traj.avg.back()) << "\n";
            const double peak = peak_power_audit(traj, arm.config.transmit);
            summary << "peak_power=" << format_g17(peak);
            if (arm.config.transmit.bounded()) {
                const double cap = arm.config.transmit.amplitude_bound();
                summary << " cap=" << format_g17(cap * cap);
            }
            summary << "\n";
        } else {
            const McConfig mc = make_mc_config(arm.config, topology, threads);
            McSummary s = monte_carlo(mc);
            const std::string path = out_prefix + tag + arm.label + "_curve.csv";
            write_curve_csv(path, s.times, s.mean_error_curve);
            out.files_written.push_back(path);
            summary << "trials=" << s.trials
                    << " mean_theta_hat=" << format_g17(s.mean_theta_hat)
                    << " stderr=" << format_g17(s.stderr_theta_hat) << "\n";
            summary << "empirical_mse=" << format_g17(s.empirical_mse)
                    << " mse_bound=" << format_g17(s.mse_bound) << "\n";
            mc_results.emplace_back(arm.label, std::move(s));
        }
    }

    if (preset.number == 8) {
        // slice the curves at fixed iterations per power budget
        const std::string path = out_prefix + tag + "error_vs_rho.csv";
        CsvWriter csv(path);
        const std::vector<std::string> cols{"rho_db", "err_t20", "err_t40", "err_t60",
                                            "err_t80"};
        csv.header(cols);
        const double rhos[] = {0.0, 2.5, 5.0, 7.5, 10.0};
        for (std::size_t i = 0; i < mc_results.size(); ++i) {
            const auto& s = mc_results[i].second;
            std::vector<double> row{rhos[i]};
            for (std::int64_t want : {20, 40, 60, 80}) {
                for (std::size_t r = 0; r < s.times.size(); ++r) {
                    if (s.times[r] == want) {
                        row.push_back(s.mean_error_curve[r]);
                        break;
                    }
                }
            }
            csv.row(row);
        }
        out.files_written.push_back(path);
    }

    out.summary = summary.str();
    const std::string summary_path = out_prefix + tag + "summary.txt";
    std::ofstream sf(summary_path, std::ios::binary);
    sf << out.summary;
    out.files_written.push_back(summary_path);
    return out;
}

}  // namespace nlc::presets

// Command-line driver: evolves the filament and wave flows, runs the
// transform experiments, and persists trajectories/reports as CSV/JSON.

#include "filament/calculus.hpp"
#include "filament/experiments.hpp"
#include "filament/frames.hpp"
#include "filament/nls.hpp"
#include "filament/report_io.hpp"
#include "filament/run_config.hpp"
#include "filament/version.hpp"
#include "filament/vfe.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace filament;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitGate = 3;
constexpr int kExitSolver = 4;
constexpr int kExitVerdict = 5;

void print_usage() {
    std::cout
        << "filament " << kFilamentVersion << "\n"
        << "usage: filament <command> [--config FILE] [--key value | --key=value ...]\n\n"
        << "commands:\n"
        << "  transform          forward transform of a perturbed-arc tangent field\n"
        << "  inverse-transform  tangent field and endpoint from wave-side data\n"
        << "  evolve-vfe         filament flow v_t = v x v_ss with pinned ends\n"
        << "  evolve-nls         focusing cubic NLS with Neumann ends\n"
        << "  equivalence        two-path transform consistency across resolutions\n"
        << "  arc-stability      sup-t H^3 distance sweep for perturbed arcs\n"
        << "  plane-stability    sup-t orbital H^2 distance sweep for plane waves\n"
        << "  conserved          invariant drift study at dt and dt/2\n\n"
        << "common keys: L R N T delta deltas modes samples seed out ...\n"
        << "precedence: flags > config file > defaults; unknown keys are rejected.\n";
}

std::map<std::string, std::string> parse_flags(int argc, char** argv, int first,
                                               std::string& config_path) {
    std::map<std::string, std::string> flags;
    for (int i = first; i < argc; ++i) {
        std::string token = argv[i];
        if (token.rfind("--", 0) != 0)
            throw ConfigError("expected --key[=value], got '" + token + "'");
        token = token.substr(2);
        std::string key, value;
        const auto eq = token.find('=');
        if (eq != std::string::npos) {
            key = token.substr(0, eq);
            value = token.substr(eq + 1);
        } else {
            key = token;
            if (i + 1 >= argc) throw ConfigError("flag '--" + key + "' is missing a value");
            value = argv[++i];
        }
        if (key == "config")
            config_path = value;
        else
            flags[key] = value;
    }
    return flags;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_key_value_text(buf.str());
}

SweepSpec sweep_from(const RunConfig& cfg) {
    SweepSpec spec;
    spec.L = cfg.L;
    spec.R = cfg.R;
    spec.deltas = cfg.deltas;
    spec.modes = cfg.modes;
    spec.T = cfg.T;
    spec.cells = cfg.N;
    spec.dt_nls = cfg.dt_nls;
    spec.num_samples = cfg.samples;
    spec.seed = cfg.seed;
    spec.slack = cfg.slack;
    return spec;
}

ScalarField initial_wave_data(const RunConfig& cfg) {
    SweepSpec spec = sweep_from(cfg);
    spec.deltas = {cfg.delta};
    spec.T = 1.0;
    return perturbed_plane_wave_data(spec, cfg.delta);
}

void report_outcome(const ExperimentReport& report) {
    for (const auto& [key, ok] : report.verdicts)
        std::cout << "  [" << (ok ? "PASS" : "FAIL") << "] " << key << "\n";
    for (const auto& [key, constant] : report.fitted_constants)
        std::cout << "  fitted " << key << " = " << constant.value << "  (" << constant.fitted_on
                  << ")\n";
}

int finish_experiment(const ExperimentReport& report, const RunConfig& cfg,
                      const std::string& stem) {
    const std::filesystem::path dir(cfg.out_dir);
    save_report(report, dir / (stem + ".json"), cfg.echo());
    const auto files = emit_plot_data(report, dir / (stem + "_plots"), cfg.echo());
    std::cout << report.name << ": wrote " << (stem + ".json") << " and " << files.size()
              << " plot files under " << dir.string() << "\n";
    if (files.empty()) std::cout << "  note: report has no series, no plot files emitted\n";
    report_outcome(report);
    return report.passed() ? kExitOk : kExitVerdict;
}

int run_command(const RunConfig& cfg) {
    const std::filesystem::path dir(cfg.out_dir);
    switch (cfg.command) {
        case Command::Transform: {
            const ScalarField q0 = initial_wave_data(cfg);
            const VectorField v0 = hasimoto_inverse(q0);
            GaugeAccumulator acc;
            const HasimotoResult result = hasimoto_forward(v0, acc, 0.0);

            NlsTrajectory out;
            out.samples.push_back({result.q, 0.0});
            save_trajectory(out, dir / "transform_q.csv", cfg.echo());
            VfeTrajectory vout;
            vout.samples.push_back({v0, 0.0});
            save_trajectory(vout, dir / "transform_v.csv", cfg.echo());

            double roundtrip = 0.0;
            for (int i = 0; i < q0.size(); ++i)
                roundtrip = std::max(roundtrip, std::abs(result.q[i] - q0[i]));
            ExperimentReport report;
            report.name = "transform";
            report.parameters["L"] = cfg.L;
            report.parameters["R"] = cfg.R;
            report.parameters["N"] = cfg.N;
            report.parameters["delta"] = cfg.delta;
            report.parameters["gram_deviation"] = result.frame.max_gram_deviation();
            report.parameters["roundtrip_sup_error"] = roundtrip;
            report.verdicts["frame_orthonormal"] = result.frame.max_gram_deviation() <= 1e-8;
            return finish_experiment(report, cfg, "transform_report");
        }
        case Command::InverseTransform: {
            const ScalarField q0 = initial_wave_data(cfg);
            const auto [frame, endpoint] = build_frame_from_q(q0);
            VfeTrajectory out;
            out.samples.push_back({frame.v, 0.0});
            save_trajectory(out, dir / "inverse_transform_v.csv", cfg.echo());

            ExperimentReport report;
            report.name = "inverse_transform";
            report.parameters["L"] = cfg.L;
            report.parameters["R"] = cfg.R;
            report.parameters["N"] = cfg.N;
            report.parameters["delta"] = cfg.delta;
            report.parameters["b_x"] = endpoint[0];
            report.parameters["b_y"] = endpoint[1];
            report.parameters["b_z"] = endpoint[2];
            report.parameters["gram_deviation"] = frame.max_gram_deviation();
            report.verdicts["frame_orthonormal"] = frame.max_gram_deviation() <= 1e-8;
            return finish_experiment(report, cfg, "inverse_transform_report");
        }
        case Command::EvolveVfe: {
            const ScalarField q0 = initial_wave_data(cfg);
            const VectorField v0 = hasimoto_inverse(q0);
            VfeConfig solver;
            solver.dt = cfg.dt;
            solver.fp_tol = cfg.fp_tol;
            solver.fp_max_iter = cfg.fp_max_iter;
            const VfeTrajectory trajectory =
                run_vfe_sampled(v0, cfg.T, solver, cfg.samples);
            save_trajectory(trajectory, dir / "vfe_trajectory.csv", cfg.echo());
            const ExperimentReport report = conserved_suite(trajectory, cfg.R);
            return finish_experiment(report, cfg, "vfe_conserved");
        }
        case Command::EvolveNls: {
            const ScalarField q0 = initial_wave_data(cfg);
            NlsConfig solver;
            solver.dt = cfg.dt_nls;
            const NlsTrajectory trajectory = run_nls_sampled(q0, cfg.T, solver, cfg.samples);
            save_trajectory(trajectory, dir / "nls_trajectory.csv", cfg.echo());
            const ExperimentReport report = conserved_suite(trajectory, cfg.R);
            return finish_experiment(report, cfg, "nls_conserved");
        }
        case Command::Equivalence: {
            const int finest = cfg.resolutions.back();
            RunConfig fine = cfg;
            fine.N = finest;
            const ScalarField q0 = initial_wave_data(fine);
            EquivalenceOptions options;
            options.T = cfg.T;
            options.resolutions = cfg.resolutions;
            options.num_samples = cfg.samples;
            options.distance_threshold = cfg.distance_threshold;
            options.min_order = cfg.min_order;
            const ExperimentReport report = equivalence_check(q0, options);
            return finish_experiment(report, cfg, "equivalence");
        }
        case Command::ArcStability:
            return finish_experiment(arc_stability_experiment(sweep_from(cfg)), cfg,
                                     "arc_stability");
        case Command::PlaneStability:
            return finish_experiment(plane_wave_stability_sweep(sweep_from(cfg)), cfg,
                                     "plane_stability");
        case Command::Conserved: {
            SweepSpec spec = sweep_from(cfg);
            spec.deltas = {cfg.delta};
            ConservedOptions options;
            options.drift_threshold = cfg.drift_threshold;
            options.min_dt_ratio = cfg.min_dt_ratio;
            return finish_experiment(conserved_drift_experiment(spec, options), cfg,
                                     "conserved_drift");
        }
    }
    return kExitConfig;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2 || std::strcmp(argv[1], "--help") == 0 || std::strcmp(argv[1], "-h") == 0) {
        print_usage();
        return argc < 2 ? kExitConfig : kExitOk;
    }
    try {
        const Command command = parse_command(argv[1]);
        std::string config_path;
        const auto flags = parse_flags(argc, argv, 2, config_path);
        const auto file_entries =
            config_path.empty() ? std::map<std::string, std::string>{} : read_config_file(config_path);
        const RunConfig cfg = parse_config(command, file_entries, flags);
        for (const auto& [key, value] : cfg.echo()) std::cout << "# " << key << "=" << value << "\n";
        return run_command(cfg);
    } catch (const GateRejection& error) {
        std::cerr << "gate error: " << error.what() << "\n";
        return kExitGate;
    } catch (const ConfigError& error) {
        std::cerr << "config error: " << error.what() << "\n";
        return kExitConfig;
    } catch (const StepFailure& error) {
        std::cerr << "solver error: " << error.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitSolver;
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "filament/experiments.hpp"
#include "filament/nls.hpp"
#include "filament/report_io.hpp"
#include "filament/vfe.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace filament;

namespace {
const double pi = std::numbers::pi;

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "filament_io_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ExperimentReport sample_report() {
    SweepSpec spec;
    spec.L = pi;
    spec.R = 2.0;
    spec.deltas = {1e-2};
    spec.T = 0.25;
    spec.cells = 64;
    spec.num_samples = 4;
    return conserved_drift_experiment(spec);
}
} // namespace

TEST_CASE("report JSON roundtrip is lossless") {
    const auto dir = temp_dir();
    ExperimentReport report = sample_report();
    save_report(report, dir / "report.json", {{"command", "conserved"}});
    ExperimentReport loaded = load_report(dir / "report.json");
    CHECK(loaded == report);
}

TEST_CASE("vfe trajectory roundtrip is bit exact") {
    const auto dir = temp_dir();
    Grid g(pi, 32);
    VfeTrajectory traj = run_vfe_sampled(arc_solution(1.7, g), 0.05, VfeConfig::defaults(g), 3);
    save_trajectory(traj, dir / "vfe.csv", {{"L", "3.14"}});
    VfeTrajectory loaded = load_vfe_trajectory(dir / "vfe.csv");
    REQUIRE(loaded.samples.size() == traj.samples.size());
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        CHECK(loaded.samples[k].t == traj.samples[k].t);
        for (int i = 0; i < g.nodes(); ++i)
            CHECK(loaded.samples[k].v[i] == traj.samples[k].v[i]);
    }
}

TEST_CASE("nls trajectory roundtrip is bit exact") {
    const auto dir = temp_dir();
    Grid g(pi, 24);
    NlsTrajectory traj =
        run_nls_sampled(plane_wave(2.0, 0.0, g), 0.1, NlsConfig::defaults(pi), 4);
    save_trajectory(traj, dir / "nls.csv", {});
    NlsTrajectory loaded = load_nls_trajectory(dir / "nls.csv");
    REQUIRE(loaded.samples.size() == traj.samples.size());
    for (std::size_t k = 0; k < traj.samples.size(); ++k)
        for (int i = 0; i < g.nodes(); ++i)
            CHECK(loaded.samples[k].q[i] == traj.samples[k].q[i]);
}

TEST_CASE("trajectory CSV has increasing t and a config echo header") {
    const auto dir = temp_dir();
    Grid g(pi, 16);
    VfeTrajectory traj = run_vfe_sampled(arc_solution(2.0, g), 0.1, VfeConfig::defaults(g), 4);
    save_trajectory(traj, dir / "echo.csv", {{"command", "evolve-vfe"}, {"N", "16"}});
    const std::string text = slurp(dir / "echo.csv");
    CHECK(text.find("# command=evolve-vfe") != std::string::npos);
    CHECK(text.find("# N=16") != std::string::npos);
    double prev = -1.0;
    VfeTrajectory loaded = load_vfe_trajectory(dir / "echo.csv");
    for (const auto& s : loaded.samples) {
        CHECK(s.t > prev);
        prev = s.t;
    }
}

TEST_CASE("kind mismatch is rejected") {
    const auto dir = temp_dir();
    Grid g(pi, 16);
    VfeTrajectory traj = run_vfe_sampled(arc_solution(2.0, g), 0.1, VfeConfig::defaults(g), 2);
    save_trajectory(traj, dir / "kind.csv", {});
    CHECK_THROWS(load_nls_trajectory(dir / "kind.csv"));
}

TEST_CASE("emit_plot_data writes one file per series plus per-functional splits") {
    const auto dir = temp_dir() / "plots";
    std::filesystem::remove_all(dir);
    ExperimentReport report = sample_report();
    const auto files = emit_plot_data(report, dir, {{"command", "conserved"}});
    CHECK_FALSE(files.empty());

    // one drift-vs-time file per functional, per the report schema
    for (const char* name : {"E1", "E2", "tangent_norm", "E_phi"}) {
        const auto path =
            dir / ("conserved_drift_experiment__functionals_dt__" + std::string(name) + ".csv");
        CHECK(std::filesystem::exists(path));
        const std::string text = slurp(path);
        CHECK(text.find(std::string("t,") + name) != std::string::npos);
    }
    CHECK(std::filesystem::exists(dir / "conserved_drift_experiment__README.txt"));
    CHECK(std::filesystem::exists(dir / "conserved_drift_experiment__convergence_orders.csv"));
}

TEST_CASE("plane sweep plot bundle carries the log-log sweep file") {
    const auto dir = temp_dir() / "sweep_plots";
    std::filesystem::remove_all(dir);
    SweepSpec spec;
    spec.L = pi;
    spec.R = 2.0;
    spec.deltas = {1e-3, 1e-2};
    spec.T = 0.2;
    spec.cells = 64;
    spec.num_samples = 4;
    ExperimentReport report = plane_wave_stability_sweep(spec);
    emit_plot_data(report, dir, {});
    const std::string text = slurp(dir / "plane_wave_stability_sweep__sweep.csv");
    CHECK(text.find("delta,sup_distance,bound") != std::string::npos);
    CHECK(text.find("\n0.001,") != std::string::npos);
}

TEST_CASE("empty report emits nothing") {
    const auto dir = temp_dir() / "empty_plots";
    std::filesystem::remove_all(dir);
    ExperimentReport report;
    report.name = "empty";
    const auto files = emit_plot_data(report, dir, {});
    CHECK(files.empty());
    CHECK_FALSE(std::filesystem::exists(dir / "empty__README.txt"));
}

TEST_CASE("saving artifacts twice yields identical bytes") {
    const auto dir = temp_dir();
    ExperimentReport report = sample_report();
    save_report(report, dir / "a.json", {{"seed", "1"}});
    save_report(report, dir / "b.json", {{"seed", "1"}});
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
}

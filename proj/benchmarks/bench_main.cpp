#include "filament/calculus.hpp"
#include "filament/experiments.hpp"
#include "filament/frames.hpp"
#include "filament/nls.hpp"
#include "filament/vfe.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

using namespace filament;
const double pi = std::numbers::pi;

VectorField bench_tangent(const Grid& g) {
    SweepSpec spec;
    spec.L = g.length();
    spec.R = 2.0;
    spec.deltas = {1e-2};
    spec.T = 1.0;
    spec.cells = g.cells();
    return hasimoto_inverse(perturbed_plane_wave_data(spec, 1e-2));
}

void BM_vfe_step(benchmark::State& state) {
    Grid g(pi, static_cast<int>(state.range(0)));
    VfeState s{bench_tangent(g), 0.0};
    VfeConfig cfg = VfeConfig::defaults(g);
    for (auto _ : state) {
        s = step_implicit_midpoint(s, cfg);
        benchmark::DoNotOptimize(s.v[1]);
    }
}
BENCHMARK(BM_vfe_step)->Arg(128)->Arg(256)->Arg(512);

void BM_strang_step(benchmark::State& state) {
    Grid g(pi, static_cast<int>(state.range(0)));
    SweepSpec spec;
    spec.L = pi;
    spec.R = 2.0;
    spec.deltas = {1e-2};
    spec.T = 1.0;
    spec.cells = g.cells();
    NlsState s{perturbed_plane_wave_data(spec, 1e-2), 0.0};
    const double dt = NlsConfig::defaults(pi).dt;
    for (auto _ : state) {
        s = step_strang(s, dt);
        benchmark::DoNotOptimize(s.q[1]);
    }
}
BENCHMARK(BM_strang_step)->Arg(128)->Arg(256)->Arg(512);

void BM_build_frame(benchmark::State& state) {
    Grid g(pi, static_cast<int>(state.range(0)));
    SweepSpec spec;
    spec.L = pi;
    spec.R = 2.0;
    spec.deltas = {1e-2};
    spec.T = 1.0;
    spec.cells = g.cells();
    ScalarField q0 = perturbed_plane_wave_data(spec, 1e-2);
    for (auto _ : state) {
        auto result = build_frame_from_q(q0);
        benchmark::DoNotOptimize(result.second);
    }
}
BENCHMARK(BM_build_frame)->Arg(256)->Arg(512);

void BM_hasimoto_forward(benchmark::State& state) {
    Grid g(pi, static_cast<int>(state.range(0)));
    VectorField v = bench_tangent(g);
    for (auto _ : state) {
        GaugeAccumulator acc;
        HasimotoResult h = hasimoto_forward(v, acc, 0.0);
        benchmark::DoNotOptimize(h.q[1]);
    }
}
BENCHMARK(BM_hasimoto_forward)->Arg(256)->Arg(512);

void BM_derivative(benchmark::State& state) {
    Grid g(pi, static_cast<int>(state.range(0)));
    VectorField v = bench_tangent(g);
    for (auto _ : state) {
        VectorField d = derivative(v, static_cast<int>(state.range(1)));
        benchmark::DoNotOptimize(d[1]);
    }
}
BENCHMARK(BM_derivative)->Args({512, 1})->Args({512, 2})->Args({512, 3});

void BM_orbital_distance(benchmark::State& state) {
    Grid g(pi, static_cast<int>(state.range(0)));
    DeterministicRng rng(1);
    ScalarField a = random_neumann_field(g, rng, 6, 0.7, 1.0);
    ScalarField b = random_neumann_field(g, rng, 6, 0.7, 1.0);
    for (auto _ : state) {
        OrbitalDistance od = orbital_distance(a, b, 2);
        benchmark::DoNotOptimize(od.distance);
    }
}
BENCHMARK(BM_orbital_distance)->Arg(256)->Arg(512);

} // namespace

BENCHMARK_MAIN();

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "filament/calculus.hpp"
#include "filament/experiments.hpp"
#include "filament/nls.hpp"

#include <cmath>
#include <numbers>

using namespace filament;
using doctest::Approx;

namespace {
const double pi = std::numbers::pi;
const double R = 2.0;
} // namespace

TEST_CASE("strang step on constants is the exact plane-wave rotation") {
    Grid g(pi, 64);
    NlsState state{plane_wave(R, 0.0, g), 0.0};
    const double dt = 0.37;
    NlsState next = step_strang(state, dt);
    const Complex expected = -(1.0 / R) * std::exp(Complex(0, -dt / (2.0 * R * R)));
    for (int i = 0; i < next.q.size(); ++i) CHECK(std::abs(next.q[i] - expected) < 1e-14);
}

TEST_CASE("zero stays zero") {
    Grid g(1.0, 32);
    NlsState next = step_strang({ScalarField(g), 0.0}, 0.1);
    for (int i = 0; i < next.q.size(); ++i) CHECK(std::abs(next.q[i]) == 0.0);
}

TEST_CASE("linear step multiplies a single mode by a unimodular factor") {
    Grid g(pi, 128);
    const int k = 5;
    const double amp = 1e-9;  // zero-amplitude limit: nonlinearity negligible
    ScalarField q0(g, [&](double s) { return Complex(amp * std::cos(k * s), 0.0); });
    NlsState next = step_strang({q0, 0.0}, 1e-3);
    auto modes = cosine_transform(next.q);
    CHECK(std::abs(modes[k]) == Approx(amp).epsilon(1e-6));
    const Complex factor = modes[k] / Complex(amp, 0.0);
    const Complex expected = std::exp(Complex(0, (k * pi / pi) * (k * pi / pi) * 1e-3));
    CHECK(std::abs(factor - expected) < 1e-6);
}

TEST_CASE("mass is preserved to 1e-10 per step") {
    Grid g(pi, 128);
    DeterministicRng rng(13);
    ScalarField q0 = random_neumann_field(g, rng, 8, 0.7, 1.3);
    NlsState state{q0, 0.0};
    const double m0 = mass(state.q);
    for (int k = 0; k < 100; ++k) state = step_strang(state, 1e-3);
    CHECK(std::abs(mass(state.q) - m0) / m0 < 1e-10);
}

TEST_CASE("time reversibility") {
    Grid g(pi, 96);
    DeterministicRng rng(17);
    ScalarField q0 = random_neumann_field(g, rng, 6, 0.6, 0.8);
    NlsState forward = step_strang({q0, 0.0}, 2e-3);
    NlsState back = step_strang(forward, -2e-3);
    for (int i = 0; i < q0.size(); ++i) CHECK(std::abs(back.q[i] - q0[i]) < 1e-10);
}

TEST_CASE("evolve_nls reproduces the plane wave to 1e-10 over T=10") {
    Grid g(pi, 128);
    NlsConfig cfg = NlsConfig::defaults(pi);
    NlsTrajectory traj = run_nls_sampled(plane_wave(R, 0.0, g), 10.0, cfg, 20);
    for (const NlsState& s : traj.samples) {
        const ScalarField ref = plane_wave(R, s.t, g);
        for (int i = 0; i < s.q.size(); ++i) CHECK(std::abs(s.q[i] - ref[i]) < 1e-10);
    }
}

TEST_CASE("strang self-convergence is second order") {
    Grid g(pi, 64);
    SweepSpec spec;
    spec.L = pi;
    spec.R = R;
    spec.deltas = {0.3};
    spec.T = 1.0;
    spec.cells = 64;
    ScalarField q0 = perturbed_plane_wave_data(spec, 0.3);
    const double T = 1.0;
    const auto run = [&](double dt) {
        NlsConfig cfg;
        cfg.dt = dt;
        return run_nls_sampled(q0, T, cfg, 1).samples.back().q;
    };
    ScalarField ref = run(2.5e-4);
    ScalarField a = run(4e-3);
    ScalarField b = run(2e-3);
    double ea = 0.0, eb = 0.0;
    for (int i = 0; i < ref.size(); ++i) {
        ea = std::max(ea, std::abs(a[i] - ref[i]));
        eb = std::max(eb, std::abs(b[i] - ref[i]));
    }
    CHECK(std::log2(ea / eb) > 1.9);
    CHECK(std::log2(ea / eb) < 2.2);
}

TEST_CASE("interior PDE residual is O(dt^2 + ds^2)") {
    SweepSpec spec;
    spec.L = pi;
    spec.R = R;
    spec.deltas = {0.2};
    spec.T = 1.0;
    const double dt = 1e-3;
    double prev = 0.0;
    for (int N : {64, 128}) {
        Grid g(pi, N);
        spec.cells = N;
        ScalarField q0 = perturbed_plane_wave_data(spec, 0.2);
        NlsConfig cfg;
        cfg.dt = dt;
        NlsState s0{q0, 0.0};
        NlsState s1 = step_strang(s0, dt);
        NlsState s2 = step_strang(s1, dt);
        const ScalarField qss = derivative(s1.q, 2);
        double residual = 0.0;
        for (int i = 1; i < g.cells(); ++i) {
            const Complex qt = (s2.q[i] - s0.q[i]) / (2.0 * dt);
            const Complex lhs = Complex(0, 1) * qt;
            const Complex rhs = qss[i] + 0.5 * std::norm(s1.q[i]) * s1.q[i];
            residual = std::max(residual, std::abs(lhs - rhs));
        }
        CHECK(residual < 100.0 * (dt * dt + g.spacing() * g.spacing()));
        if (prev > 0.0) CHECK(prev / residual > 3.0);  // ds-dominated here
        prev = residual;
    }
}

TEST_CASE("discrete Neumann residual stays O(ds^2) along the evolution") {
    SweepSpec spec;
    spec.L = pi;
    spec.R = R;
    spec.deltas = {5e-2};
    spec.T = 1.0;
    spec.cells = 128;
    Grid g(pi, 128);
    ScalarField q0 = perturbed_plane_wave_data(spec, 5e-2);
    NlsTrajectory traj = run_nls_sampled(q0, 1.0, NlsConfig::defaults(pi), 10);
    for (const NlsState& s : traj.samples) {
        ScalarField dq = derivative(s.q, 1);
        const double bound = 5.0 * g.spacing() * g.spacing() * sobolev_norm(s.q, 2);
        CHECK(std::abs(dq[0]) < bound);
        CHECK(std::abs(dq[g.cells()]) < bound);
    }
}

TEST_CASE("plane_wave samples") {
    Grid g(pi, 64);
    SUBCASE("t = 0") {
        ScalarField q = plane_wave(R, 0.0, g);
        for (int i = 0; i < q.size(); ++i) CHECK(std::abs(q[i] - Complex(-0.5, 0.0)) < 1e-15);
    }
    SUBCASE("quarter period t = pi R^2") {
        ScalarField q = plane_wave(R, pi * R * R, g);
        const Complex expected = -(1.0 / R) * std::exp(Complex(0, -pi / 2.0));
        CHECK(std::abs(q[0] - expected) < 1e-15);
        CHECK(std::abs(q[0] - Complex(0.0, 0.5)) < 1e-14);
    }
    SUBCASE("modulus is 1/R for all t") {
        for (double t : {0.0, 0.3, 7.7, 1000.0})
            CHECK(std::abs(plane_wave(R, t, g)[0]) == Approx(1.0 / R).epsilon(1e-14));
    }
    SUBCASE("rejects R <= 0") { CHECK_THROWS_AS(plane_wave(0.0, 0.0, g), std::invalid_argument); }
}

TEST_CASE("neumann_perturbation") {
    Grid g(pi, 256);
    SUBCASE("single mode has the cosine norm") {
        const double delta = 0.2;
        ScalarField phi = neumann_perturbation({{1, Complex(delta, 0.0)}}, g);
        const double norm = l2_norm(phi);
        CHECK(norm * norm == Approx(delta * delta * pi / 2.0).epsilon(1e-6));
    }
    SUBCASE("empty mode list gives the zero field") {
        ScalarField phi = neumann_perturbation({}, g);
        for (int i = 0; i < phi.size(); ++i) CHECK(std::abs(phi[i]) == 0.0);
    }
    SUBCASE("endpoint derivative residual is O(ds^2)") {
        ScalarField phi = neumann_perturbation({{1, 0.5}, {3, Complex(0.0, 0.2)}}, g);
        ScalarField dphi = derivative(phi, 1);
        const double tol = 5.0 * g.spacing() * g.spacing();
        CHECK(std::abs(dphi[0]) < tol);
        CHECK(std::abs(dphi[g.cells()]) < tol);
    }
    SUBCASE("mode zero is rejected") {
        CHECK_THROWS_AS(neumann_perturbation({{0, 1.0}}, g), std::invalid_argument);
    }
}

TEST_CASE("mass and energy") {
    Grid g(pi, 256);
    SUBCASE("plane-wave values") {
        ScalarField q = plane_wave(R, 0.0, g);
        CHECK(mass(q) == Approx(pi / (R * R)).epsilon(1e-12));
        CHECK(nls_energy(q) == Approx(-pi / (4.0 * std::pow(R, 4))).epsilon(1e-12));
    }
    SUBCASE("zero field") {
        CHECK(mass(ScalarField(g)) == 0.0);
        CHECK(nls_energy(ScalarField(g)) == 0.0);
    }
    SUBCASE("drift below 1e-6 along a perturbed trajectory") {
        SweepSpec spec;
        spec.L = pi;
        spec.R = R;
        spec.deltas = {1e-2};
        spec.T = 1.0;
        spec.cells = 256;
        ScalarField q0 = perturbed_plane_wave_data(spec, 1e-2);
        NlsTrajectory traj = run_nls_sampled(q0, 1.0, NlsConfig::defaults(pi), 10);
        const double m0 = mass(traj.samples.front().q);
        const double e0 = nls_energy(traj.samples.front().q);
        for (const NlsState& s : traj.samples) {
            CHECK(std::abs(mass(s.q) - m0) / std::abs(m0) < 1e-6);
            CHECK(std::abs(nls_energy(s.q) - e0) / std::abs(e0) < 1e-6);
        }
    }
}

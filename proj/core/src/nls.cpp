#include "filament/nls.hpp"

#include "filament/calculus.hpp"

#include <cmath>
#include <numbers>

namespace filament {

NlsConfig NlsConfig::defaults(double L) {
    NlsConfig cfg;
    const double ratio = L / std::numbers::pi;
    cfg.dt = 1e-3 * ratio * ratio;
    return cfg;
}

namespace {

// Exact flow of i q_t = (1/2)|q|^2 q over time h (|q| is invariant).
void nonlinear_rotation(ScalarField& q, double h) {
    for (auto& value : q.values())
        value *= std::exp(Complex(0.0, -0.5 * std::norm(value) * h));
}

} // namespace

NlsState step_strang(const NlsState& state, double dt) {
    const Grid& grid = state.q.grid();
    const double L = grid.length();

    ScalarField q = state.q;
    nonlinear_rotation(q, 0.5 * dt);

    std::vector<Complex> modes = cosine_transform(q);
    for (int k = 0; k < static_cast<int>(modes.size()); ++k) {
        const double mu = k * std::numbers::pi / L;
        modes[k] *= std::exp(Complex(0.0, mu * mu * dt));
    }
    q = inverse_cosine_transform(modes, grid);

    nonlinear_rotation(q, 0.5 * dt);
    return {std::move(q), state.t + dt};
}

NlsState evolve_nls(NlsState state, double T, const NlsConfig& cfg, const NlsObserver& observer) {
    cfg.validate();
    if (T < state.t) throw std::invalid_argument("evolve_nls: T must be >= state.t");
    if (observer) observer(state);
    while (state.t < T) {
        const double remaining = T - state.t;
        const bool last = remaining <= cfg.dt;
        state = step_strang(state, last ? remaining : cfg.dt);
        if (last) state.t = T;
        if (observer) observer(state);
    }
    return state;
}

ScalarField plane_wave(double R, double t, const Grid& grid) {
    if (!(R > 0.0)) throw std::invalid_argument("plane_wave: R must be positive");
    const Complex value = -(1.0 / R) * std::exp(Complex(0.0, -t / (2.0 * R * R)));
    ScalarField q(grid);
    for (auto& node : q.values()) node = value;
    return q;
}

ScalarField neumann_perturbation(const std::vector<std::pair<int, Complex>>& modes,
                                 const Grid& grid) {
    for (const auto& [k, amplitude] : modes) {
        (void)amplitude;
        if (k < 1)
            throw std::invalid_argument(
                "neumann_perturbation: mode index must be >= 1 (0 is the background)");
    }
    ScalarField phi(grid);
    const double L = grid.length();
    for (int i = 0; i < grid.nodes(); ++i) {
        const double s = grid.node(i);
        Complex acc = 0.0;
        for (const auto& [k, amplitude] : modes)
            acc += amplitude * std::cos(k * std::numbers::pi * s / L);
        phi[i] = acc;
    }
    return phi;
}

double mass(const ScalarField& q) {
    const double n = l2_norm(q);
    return n * n;
}

double nls_energy(const ScalarField& q) {
    const double grad = l2_norm(derivative(q, 1));
    std::vector<double> quartic(q.size());
    for (int i = 0; i < q.size(); ++i) {
        const double a = std::norm(q[i]);
        quartic[i] = a * a;
    }
    return grad * grad - 0.25 * integrate_real(q.grid(), quartic);
}

} // namespace filament

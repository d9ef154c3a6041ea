#include "filament/vfe.hpp"

#include "filament/calculus.hpp"

#include <cmath>
#include <numbers>

namespace filament {

namespace {

void check_unit(const VectorField& v, const char* what) {
    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v[i].norm() - 1.0) > 1e-6)
            throw std::invalid_argument(std::string(what) + ": v is not unit length");
}

// Second-difference interior rows only; the boundary rows of the rhs are
// forced to zero, so the one-sided stencils never enter the dynamics.
void rhs_into(const VectorField& v, VectorField& out) {
    const int N = v.grid().cells();
    const double inv_h2 = 1.0 / (v.grid().spacing() * v.grid().spacing());
    out[0].setZero();
    out[N].setZero();
    for (int i = 1; i < N; ++i)
        out[i] = v[i].cross((v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv_h2);
}

} // namespace

VectorField vfe_rhs(const VectorField& v) {
    check_unit(v, "vfe_rhs");
    VectorField out(v.grid());
    rhs_into(v, out);
    return out;
}

VfeState step_implicit_midpoint(const VfeState& state, const VfeConfig& cfg) {
    cfg.validate();
    const VectorField& v = state.v;
    const int n = v.size();

    VectorField mid(v.grid()), f(v.grid());
    rhs_into(v, f);

    // Explicit predictor, then fixed-point iteration on
    // u = v + dt * rhs((v + u) / 2), with one polishing sweep after the
    // tolerance is met to keep the per-node norm drift below fp_tol.
    VectorField u(v.grid());
    for (int i = 0; i < n; ++i) u[i] = v[i] + cfg.dt * f[i];

    bool converged = false;
    for (int iter = 0; iter < cfg.fp_max_iter; ++iter) {
        for (int i = 0; i < n; ++i) mid[i] = 0.5 * (v[i] + u[i]);
        rhs_into(mid, f);
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            const Vec3 next = v[i] + cfg.dt * f[i];
            delta = std::max(delta, (next - u[i]).cwiseAbs().maxCoeff());
            u[i] = next;
        }
        if (converged) break;
        if (delta <= cfg.fp_tol) converged = true;
    }
    if (!converged)
        throw StepFailure("step_implicit_midpoint: fixed point stalled, dt too large");

    return {std::move(u), state.t + cfg.dt};
}

VfeState evolve_vfe(VfeState state, double T, const VfeConfig& cfg, const VfeObserver& observer) {
    cfg.validate();
    if (T < state.t) throw std::invalid_argument("evolve_vfe: T must be >= state.t");
    if (observer) observer(state);
    while (state.t < T) {
        const double remaining = T - state.t;
        VfeConfig step_cfg = cfg;
        const bool last = remaining <= cfg.dt;
        if (last) step_cfg.dt = remaining;
        state = step_implicit_midpoint(state, step_cfg);
        if (last) state.t = T;
        if (observer) observer(state);
    }
    return state;
}

double invariant_E1(const VectorField& v) {
    check_unit(v, "invariant_E1");
    const VectorField vs = derivative(v, 1);
    const VectorField vss = derivative(v, 2);
    const int n = v.size();
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        a[i] = vss[i].squaredNorm();
        const double s2 = vs[i].squaredNorm();
        b[i] = s2 * s2;
    }
    return integrate_real(v.grid(), a) - 1.25 * integrate_real(v.grid(), b);
}

double invariant_E2(const VectorField& v) {
    check_unit(v, "invariant_E2");
    const VectorField vs = derivative(v, 1);
    const VectorField vss = derivative(v, 2);
    const VectorField vsss = derivative(v, 3);
    const int n = v.size();
    std::vector<double> a(n), b(n), c(n), d(n);
    for (int i = 0; i < n; ++i) {
        a[i] = vsss[i].squaredNorm();
        b[i] = vs[i].squaredNorm() * vss[i].squaredNorm();
        const double dot = vs[i].dot(vss[i]);
        c[i] = dot * dot;
        const double s2 = vs[i].squaredNorm();
        d[i] = s2 * s2 * s2;
    }
    return integrate_real(v.grid(), a) - 3.5 * integrate_real(v.grid(), b) -
           14.0 * integrate_real(v.grid(), c) + (21.0 / 8.0) * integrate_real(v.grid(), d);
}

double invariant_tangent_norm(const VectorField& v) {
    return l2_norm(derivative(v, 1));
}

VectorField arc_solution(double R, const Grid& grid) {
    if (!(R > 0.0)) throw std::invalid_argument("arc_solution: R must be positive");
    return VectorField(grid, [R](double s) {
        return Vec3(std::cos(s / R), std::sin(s / R), 0.0);
    });
}

double perturbation_energy(const VectorField& phi, double R) {
    const double grad = l2_norm(derivative(phi, 1));
    const double amp = l2_norm(phi);
    return grad * grad - amp * amp / (R * R);
}

double discrete_perturbation_energy(const VectorField& phi, double R) {
    const double h = phi.grid().spacing();
    const double ch = 2.0 * (1.0 - std::cos(h / R)) / (h * h);
    const int N = phi.grid().cells();
    double grad = 0.0;
    for (int i = 0; i < N; ++i) grad += (phi[i + 1] - phi[i]).squaredNorm() / h;
    double mass = 0.5 * (phi[0].squaredNorm() + phi[N].squaredNorm());
    for (int i = 1; i < N; ++i) mass += phi[i].squaredNorm();
    return grad - ch * mass * h;
}

double discrete_tangent_energy(const VectorField& v) {
    const double h = v.grid().spacing();
    double grad = 0.0;
    for (int i = 0; i < v.grid().cells(); ++i) grad += (v[i + 1] - v[i]).squaredNorm() / h;
    return grad;
}

std::optional<double> poincare_gate(double L, double R) {
    if (!(L > 0.0) || !(R > 0.0))
        throw std::invalid_argument("poincare_gate: L and R must be positive");
    const double c0 = 1.0 - (L * L) / (R * R * std::numbers::pi * std::numbers::pi);
    if (c0 <= 0.0) return std::nullopt;
    return c0;
}

} // namespace filament

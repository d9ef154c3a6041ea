#pragma once

#include "filament/grid.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace filament {

/// Tangent-field state of v_t = v x v_ss with Dirichlet-pinned endpoints.
struct VfeState {
    VectorField v;
    double t = 0.0;
};

struct VfeConfig {
    double dt = 0.0;
    double fp_tol = 1e-12;
    int fp_max_iter = 100;

    /// Dispersive scaling dt = 0.25 ds^2; the explicit predictor of the
    /// midpoint fixed point contracts under it.
    static VfeConfig defaults(const Grid& grid) {
        VfeConfig cfg;
        cfg.dt = 0.25 * grid.spacing() * grid.spacing();
        return cfg;
    }

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("VfeConfig: dt must be positive");
        if (!(fp_tol > 0.0)) throw std::invalid_argument("VfeConfig: fp_tol must be positive");
        if (fp_max_iter < 1) throw std::invalid_argument("VfeConfig: fp_max_iter must be >= 1");
    }
};

/// Fixed-point iteration failed to reach fp_tol within fp_max_iter; the time
/// step is too large for the grid.
struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Node-wise v x (second s-derivative of v), forced to zero at both boundary
/// nodes (v_t vanishes there under Dirichlet data). Output is orthogonal to v
/// node-wise, exactly.
VectorField vfe_rhs(const VectorField& v);

/// Implicit midpoint step v+ = v + dt * rhs((v + v+)/2) solved by fixed-point
/// iteration; preserves per-node |v| to iteration tolerance and leaves the
/// boundary nodes bit-identical.
VfeState step_implicit_midpoint(const VfeState& state, const VfeConfig& cfg);

using VfeObserver = std::function<void(const VfeState&)>;

/// Repeated midpoint steps until time T (the last step is shortened to land
/// exactly). The observer is invoked on the initial state and after every step.
VfeState evolve_vfe(VfeState state, double T, const VfeConfig& cfg,
                    const VfeObserver& observer = {});

/// ||v_ss||^2 - (5/4) || |v_s|^2 ||^2
double invariant_E1(const VectorField& v);
/// ||v_sss||^2 - (7/2) || |v_s||v_ss| ||^2 - 14 ||v_s . v_ss||^2 + (21/8) || |v_s|^3 ||^2
double invariant_E2(const VectorField& v);
/// ||v_s|| (conserved along the flow)
double invariant_tangent_norm(const VectorField& v);

/// Unit tangent of the circular arc of radius R: (cos(s/R), sin(s/R), 0).
/// A stationary solution; numerically an exact fixed point of vfe_rhs.
VectorField arc_solution(double R, const Grid& grid);

/// E(phi) = ||phi_s||^2 - (1/R^2) ||phi||^2, conserved for perturbations of
/// the arc.
double perturbation_energy(const VectorField& phi, double R);

/// Discrete counterpart of E(phi) built from the solver's own operators:
/// staggered first differences for the gradient term and the modified
/// curvature constant c_h = 2(1 - cos(ds/R))/ds^2 (the exact second-difference
/// eigenvalue of the discrete arc). The midpoint scheme conserves this
/// quantity to roundoff; it converges to perturbation_energy at O(ds^2).
double discrete_perturbation_energy(const VectorField& phi, double R);

/// Staggered-difference gradient energy sum |v_{i+1} - v_i|^2 / ds, the
/// discrete invariant behind the conservation of ||v_s||. Conserved to
/// roundoff by the midpoint scheme.
double discrete_tangent_energy(const VectorField& v);

/// c0 = 1 - L^2 / (R^2 pi^2) when R > L/pi, otherwise empty: the Poincare
/// constant is nonpositive and the stability theory does not apply.
std::optional<double> poincare_gate(double L, double R);

} // namespace filament

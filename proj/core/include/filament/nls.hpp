#pragma once

#include "filament/grid.hpp"

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace filament {

/// State of i q_t = q_ss + (1/2)|q|^2 q with Neumann end conditions.
struct NlsState {
    ScalarField q;
    double t = 0.0;
};

struct NlsConfig {
    double dt = 0.0;

    /// Splitting error is the only dt limit (the linear step is spectral and
    /// exact), so the default is resolution independent.
    static NlsConfig defaults(double L);

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("NlsConfig: dt must be positive");
    }
};

/// One Strang step: exact nonlinear half-step q <- q exp(-i|q|^2 dt/4), exact
/// linear step in the cosine basis (mode factor exp(+i (k pi / L)^2 dt)),
/// exact nonlinear half-step. Negative dt runs the step backwards.
NlsState step_strang(const NlsState& state, double dt);

using NlsObserver = std::function<void(const NlsState&)>;

/// Repeated Strang steps until time T (the last step is shortened to land
/// exactly). The observer is invoked on the initial state and after every step.
NlsState evolve_nls(NlsState state, double T, const NlsConfig& cfg,
                    const NlsObserver& observer = {});

/// q_R(t) = -(1/R) exp(-i t / (2 R^2)) sampled as a constant field.
ScalarField plane_wave(double R, double t, const Grid& grid);

/// phi0(s) = sum_k a_k cos(k pi s / L) over the given (k >= 1, a_k) modes;
/// the derivative vanishes at both endpoints analytically. Rejects k < 1
/// (k = 0 is reserved for the plane-wave background).
ScalarField neumann_perturbation(const std::vector<std::pair<int, Complex>>& modes,
                                 const Grid& grid);

/// ||q||^2
double mass(const ScalarField& q);
/// ||q_s||^2 - (1/4) int |q|^4 ds
double nls_energy(const ScalarField& q);

} // namespace filament

#pragma once

#include "filament/frames.hpp"
#include "filament/grid.hpp"
#include "filament/nls.hpp"
#include "filament/report.hpp"
#include "filament/vfe.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace filament {

/// Raised when a stability experiment is requested outside R > L/pi.
struct GateRejection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameters of a stability sweep. Perturbed data are always produced
/// through the transform: q0 = q_R(0) + delta * sum_k cos(k pi s / L), then
/// the inverse transform for the filament side.
struct SweepSpec {
    double L = 0.0;
    double R = 0.0;
    std::vector<double> deltas;    // ascending perturbation sizes
    std::vector<int> modes = {1};  // cosine mode indices, k >= 1
    double T = 10.0;               // finite stand-in for sup over t >= 0
    int cells = 256;
    double dt_nls = 0.0;           // 0 selects NlsConfig::defaults(L)
    double vfe_dt_factor = 0.25;   // dt = factor * ds^2
    int num_samples = 100;         // trajectory samples over [0, T]
    std::uint64_t seed = 1;
    double slack = 3.0;            // verdict slack over fitted constants

    void validate() const;
    /// Throws GateRejection when R <= L/pi.
    void require_gate() const;
};

/// Deterministic splitmix64-based generator; identical streams on every
/// platform for a given seed.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)

private:
    std::uint64_t state_;
};

/// Random smooth field sum_{k=0..max_mode} a_k cos(k pi s/L) with geometric
/// mode decay, scaled to the requested H^2 norm. Satisfies the Neumann end
/// conditions analytically.
ScalarField random_neumann_field(const Grid& grid, DeterministicRng& rng, int max_mode,
                                 double decay, double target_h2_norm);

struct VfeTrajectory {
    std::vector<VfeState> samples;
};
struct NlsTrajectory {
    std::vector<NlsState> samples;
};

/// Evolves and samples at the uniformly spaced times i*T/num_samples
/// (window-by-window with a uniform substep per window). When `gauge` is
/// given it is fed the boundary trace |v_s(0,t)|^2 after every step.
VfeTrajectory run_vfe_sampled(VectorField v0, double T, const VfeConfig& cfg, int num_samples,
                              GaugeAccumulator* gauge = nullptr);
NlsTrajectory run_nls_sampled(ScalarField q0, double T, const NlsConfig& cfg, int num_samples);

/// q_R(0) + delta * sum over spec.modes of cos(k pi s / L) on spec's grid.
ScalarField perturbed_plane_wave_data(const SweepSpec& spec, double delta);

struct EquivalenceOptions {
    double T = 0.5;
    std::vector<int> resolutions = {128, 256, 512};
    int num_samples = 50;
    double vfe_dt_factor = 0.25;
    double nls_dt_factor = 0.25;   // coupled dt = factor * ds^2 for the refinement study
    double distance_threshold = 1e-3;
    double min_order = 1.9;
};

/// Theorems 1-2 as an executable check: the NLS evolution of q0 against the
/// inverse-transform / filament-evolution / forward-transform path, compared
/// in direct and orbital H^1 distance per resolution, with refinement orders.
ExperimentReport equivalence_check(const ScalarField& q0_fine, const EquivalenceOptions& options);

struct TransferSample {
    ScalarField q0;
    ScalarField phi0;
};

std::vector<TransferSample> generate_transfer_samples(const Grid& grid, int count,
                                                      std::uint64_t seed);

/// Ratio ||v0~ - v0||_3 / (||phi0||_2 + ||phi0||_2^3) over the samples; the
/// max is the fitted constant of the perturbation-transfer bound, checked for
/// stability across the two disjoint sample halves.
ExperimentReport perturbation_transfer_check(const std::vector<TransferSample>& samples);

/// Drift curves of E1, E2, ||v_s||, E(phi) and the pointwise no-stretching
/// identity residual max_s |2 v^R . phi + |phi|^2| along a filament trajectory.
ExperimentReport conserved_suite(const VfeTrajectory& trajectory, double R);
/// Mass/energy drift curves along an NLS trajectory.
ExperimentReport conserved_suite(const NlsTrajectory& trajectory, double R);

struct ConservedOptions {
    double drift_threshold = 1e-4;
    double min_dt_ratio = 3.0;  // drift reduction required when dt halves
};

/// Runs the perturbed-arc trajectory at dt and dt/2 (delta = spec.deltas[0])
/// and reports drifts plus their dt-convergence ratio.
ExperimentReport conserved_drift_experiment(const SweepSpec& spec,
                                            const ConservedOptions& options = {});

/// Arc stability: sup_t ||v(t) - v^R||_3 per delta, bounded by the constant
/// fitted on the smallest delta with the configured slack.
ExperimentReport arc_stability_experiment(const SweepSpec& spec);

/// Plane-wave orbital stability: sup_t inf_theta ||e^{i theta} q - q_R||_2
/// per delta, plus the filament-side route and the per-time transfer ratio.
ExperimentReport plane_wave_stability_sweep(const SweepSpec& spec);

} // namespace filament

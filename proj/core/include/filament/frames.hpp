#pragma once

#include "filament/grid.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace filament {

/// Cross-product convention of an orthonormal triple {v, e, w}.
/// RightHanded: w = v x e (the parallel-frame default).
/// LeftHanded:  w = e x v, the convention of the transform-carrying frames,
/// whose initial triple is (e1, -e2, e3).
enum class FrameOrientation { RightHanded, LeftHanded };

/// Orthonormal moving frame {v, e, w} on a grid. At every node the triple is
/// orthonormal to 1e-8 and w = +/- v x e with a fixed sign along the field.
struct FrameField {
    VectorField v;
    VectorField e;
    VectorField w;

    /// Max over nodes of the max-abs entry of Gram(v,e,w) - I.
    double max_gram_deviation() const;
    /// Max over nodes of |w - (v x e)| (right-handed) or |w - (e x v)| (left-handed).
    double max_cross_deviation(FrameOrientation orientation) const;
    FrameOrientation orientation() const;
};

/// Accumulates the gauge phase integral(0..t) |psi(0,tau)|^2 dtau by the
/// trapezoid rule on the boundary-trace history. phase(0) = 0 and phase is
/// nondecreasing in t.
struct GaugeAccumulator {
    double phase = 0.0;
    double last_time = 0.0;
    double last_trace_sq = -1.0; // < 0 marks "no trace recorded yet"

    /// Advance to time t with boundary trace |psi(0,t)|^2. Rejects t < last_time.
    void advance(double t, double trace_sq);
};

struct HasimotoResult {
    ScalarField q;    // gauge-transformed wave function
    ScalarField psi;  // raw frame decomposition psi1 + i psi2
    FrameField frame;
};

/// Integrates the frame system
///   v_s = q1 e + q2 w,  e_s = -q1 v,  w_s = -q2 v,
///   (v, e, w)(0) = (e1, -e2, e3),
/// with classical RK4 in s (coefficients linearly interpolated between nodes)
/// and per-node re-orthonormalization. Returns the frame and b = v(L).
std::pair<FrameField, Vec3> build_frame_from_q(const ScalarField& q0);

/// Integrates the parallel-transport equation e_s = -(v_s . e) v from e_init,
/// projecting e onto the tangent-orthogonal complement and renormalizing at
/// every node; w is set by the requested orientation.
/// Rejects non-unit v (tolerance 1e-6) and e_init not orthogonal to v(0)
/// (tolerance 1e-8).
FrameField parallel_frame_from_v(const VectorField& v, const Vec3& e_init,
                                 FrameOrientation orientation = FrameOrientation::RightHanded);

/// psi = (e . v_s) + i (w . v_s) with the finite-difference v_s.
ScalarField extract_psi(const FrameField& frame);

/// Applies the gauge factor exp(-i/2 * phase) after advancing the accumulator
/// to time t with the trace |psi(0,t)|^2. |q| = |psi| pointwise.
ScalarField gauge_apply(const ScalarField& psi, GaugeAccumulator& acc, double t);

/// The generalized Hasimoto transformation of a tangent field at time t:
/// parallel frame with e_init = -e2 projected orthogonal to v(0) (left-handed
/// w), psi extraction, then the gauge factor. Rejects v(0) within 1e-6 of
/// +/- e2, where the projection degenerates.
HasimotoResult hasimoto_forward(const VectorField& v, GaugeAccumulator& acc, double t);

/// The inverse transformation: integrates the frame system driven by q from
/// (e1, -e2, e3) and returns the unit tangent field.
VectorField hasimoto_inverse(const ScalarField& q);

struct OrbitalDistance {
    double theta_star = 0.0;
    double distance = 0.0;
};

/// inf over theta of ||exp(i theta) q - p||_{H^m}, by the closed form
/// theta* = -arg<q,p>_{H^m}, dist^2 = ||q||^2 + ||p||^2 - 2|<q,p>|.
OrbitalDistance orbital_distance(const ScalarField& q, const ScalarField& p, int m);

/// x(s) = x0 + cumulative trapezoid of v; x_s recovers v to O(ds^2).
VectorField reconstruct_position(const VectorField& v, const Vec3& x0);

/// The classical curvature/torsion transform q = kappa exp(i int_0^s tau dr).
/// Nodes with kappa below the threshold are flagged undefined; the phase
/// integral treats torsion as zero there. Diagnostic only.
struct ClassicalHasimoto {
    ScalarField q;
    std::vector<std::uint8_t> defined;
};
ClassicalHasimoto classical_hasimoto(const VectorField& v, double curvature_threshold = 1e-6);

} // namespace filament

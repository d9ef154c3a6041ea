#include "filament/frames.hpp"

#include "filament/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace filament {

namespace {

struct FrameTriple {
    Vec3 v, e, w;
};

// Right side of the frame system v' = q1 e + q2 w, e' = -q1 v, w' = -q2 v.
FrameTriple frame_rhs(const FrameTriple& y, double q1, double q2) {
    return {q1 * y.e + q2 * y.w, -q1 * y.v, -q2 * y.v};
}

FrameTriple axpy(const FrameTriple& y, double a, const FrameTriple& d) {
    return {y.v + a * d.v, y.e + a * d.e, y.w + a * d.w};
}

// Gram-Schmidt pass that preserves the triple's chirality exactly:
// v is normalized, e projected off v, and w rebuilt from the cross product.
void reorthonormalize(FrameTriple& y, FrameOrientation orientation) {
    y.v.normalize();
    y.e -= y.e.dot(y.v) * y.v;
    y.e.normalize();
    y.w = (orientation == FrameOrientation::LeftHanded) ? y.e.cross(y.v) : y.v.cross(y.e);
}

} // namespace

double FrameField::max_gram_deviation() const {
    double dev = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        const Vec3& a = v[i];
        const Vec3& b = e[i];
        const Vec3& c = w[i];
        dev = std::max({dev, std::abs(a.dot(a) - 1.0), std::abs(b.dot(b) - 1.0),
                        std::abs(c.dot(c) - 1.0), std::abs(a.dot(b)), std::abs(a.dot(c)),
                        std::abs(b.dot(c))});
    }
    return dev;
}

double FrameField::max_cross_deviation(FrameOrientation orientation) const {
    double dev = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        const Vec3 cross = (orientation == FrameOrientation::LeftHanded) ? e[i].cross(v[i])
                                                                         : v[i].cross(e[i]);
        dev = std::max(dev, (w[i] - cross).norm());
    }
    return dev;
}

FrameOrientation FrameField::orientation() const {
    return w[0].dot(v[0].cross(e[0])) >= 0.0 ? FrameOrientation::RightHanded
                                             : FrameOrientation::LeftHanded;
}

void GaugeAccumulator::advance(double t, double trace_sq) {
    if (t < last_time)
        throw std::invalid_argument("GaugeAccumulator: time must not decrease");
    if (t > last_time) {
        // First advance without history falls back to the current trace value.
        const double prev = last_trace_sq >= 0.0 ? last_trace_sq : trace_sq;
        phase += 0.5 * (prev + trace_sq) * (t - last_time);
        last_time = t;
    }
    last_trace_sq = trace_sq;
}

std::pair<FrameField, Vec3> build_frame_from_q(const ScalarField& q0) {
    const Grid& grid = q0.grid();
    const double h = grid.spacing();
    const int N = grid.cells();

    FrameField frame{VectorField(grid), VectorField(grid), VectorField(grid)};
    FrameTriple y{Vec3(1, 0, 0), Vec3(0, -1, 0), Vec3(0, 0, 1)};
    frame.v[0] = y.v;
    frame.e[0] = y.e;
    frame.w[0] = y.w;

    for (int j = 0; j < N; ++j) {
        const double a1 = q0[j].real(), a2 = q0[j].imag();
        const double b1 = q0[j + 1].real(), b2 = q0[j + 1].imag();
        const double m1 = 0.5 * (a1 + b1), m2 = 0.5 * (a2 + b2);

        const FrameTriple k1 = frame_rhs(y, a1, a2);
        const FrameTriple k2 = frame_rhs(axpy(y, 0.5 * h, k1), m1, m2);
        const FrameTriple k3 = frame_rhs(axpy(y, 0.5 * h, k2), m1, m2);
        const FrameTriple k4 = frame_rhs(axpy(y, h, k3), b1, b2);

        y.v += (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
        y.e += (h / 6.0) * (k1.e + 2.0 * k2.e + 2.0 * k3.e + k4.e);
        y.w += (h / 6.0) * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
        reorthonormalize(y, FrameOrientation::LeftHanded);

        frame.v[j + 1] = y.v;
        frame.e[j + 1] = y.e;
        frame.w[j + 1] = y.w;
    }
    return {std::move(frame), y.v};
}

FrameField parallel_frame_from_v(const VectorField& v, const Vec3& e_init,
                                 FrameOrientation orientation) {
    const Grid& grid = v.grid();
    const double h = grid.spacing();
    const int N = grid.cells();

    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v[i].norm() - 1.0) > 1e-6)
            throw std::invalid_argument("parallel_frame_from_v: v is not unit length");
    if (std::abs(e_init.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("parallel_frame_from_v: e_init is not unit length");
    if (std::abs(e_init.dot(v[0])) > 1e-8)
        throw std::invalid_argument("parallel_frame_from_v: e_init not orthogonal to v(0)");

    const VectorField vs = derivative(v, 1);

    FrameField frame{v, VectorField(grid), VectorField(grid)};
    Vec3 e = e_init;
    const auto set_node = [&](int i) {
        e -= e.dot(v[i]) * v[i];
        e.normalize();
        frame.e[i] = e;
        frame.w[i] = (orientation == FrameOrientation::LeftHanded) ? e.cross(v[i])
                                                                   : v[i].cross(e);
    };
    set_node(0);

    const auto rhs = [](const Vec3& ee, const Vec3& vv, const Vec3& dvv) {
        return Vec3(-(dvv.dot(ee)) * vv);
    };
    for (int j = 0; j < N; ++j) {
        const Vec3 vm = 0.5 * (v[j] + v[j + 1]);
        const Vec3 dm = 0.5 * (vs[j] + vs[j + 1]);
        const Vec3 k1 = rhs(e, v[j], vs[j]);
        const Vec3 k2 = rhs(e + 0.5 * h * k1, vm, dm);
        const Vec3 k3 = rhs(e + 0.5 * h * k2, vm, dm);
        const Vec3 k4 = rhs(e + h * k3, v[j + 1], vs[j + 1]);
        e += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        set_node(j + 1);
    }
    return frame;
}

ScalarField extract_psi(const FrameField& frame) {
    const VectorField vs = derivative(frame.v, 1);
    ScalarField psi(frame.v.grid());
    for (int i = 0; i < vs.size(); ++i)
        psi[i] = Complex(frame.e[i].dot(vs[i]), frame.w[i].dot(vs[i]));
    return psi;
}

ScalarField gauge_apply(const ScalarField& psi, GaugeAccumulator& acc, double t) {
    acc.advance(t, std::norm(psi[0]));
    const Complex factor = std::exp(Complex(0.0, -0.5 * acc.phase));
    ScalarField q = psi;
    for (auto& value : q.values()) value *= factor;
    return q;
}

HasimotoResult hasimoto_forward(const VectorField& v, GaugeAccumulator& acc, double t) {
    static const Vec3 e2(0, 1, 0);
    if ((v[0] - e2).norm() < 1e-6 || (v[0] + e2).norm() < 1e-6)
        throw std::invalid_argument(
            "hasimoto_forward: v(0) aligned with e2, frame seed degenerates");
    Vec3 seed = -e2 - (-e2).dot(v[0]) * v[0];
    seed.normalize();
    FrameField frame = parallel_frame_from_v(v, seed, FrameOrientation::LeftHanded);
    ScalarField psi = extract_psi(frame);
    ScalarField q = gauge_apply(psi, acc, t);
    return {std::move(q), std::move(psi), std::move(frame)};
}

VectorField hasimoto_inverse(const ScalarField& q) {
    return build_frame_from_q(q).first.v;
}

OrbitalDistance orbital_distance(const ScalarField& q, const ScalarField& p, int m) {
    require_same_grid(q.grid(), p.grid(), "orbital_distance");
    const Complex ip = sobolev_inner(q, p, m);
    const double theta = (std::abs(ip) == 0.0) ? 0.0 : -std::arg(ip);
    // ||q||^2 + ||p||^2 - 2|<q,p>| cancels catastrophically for nearby
    // orbits; evaluating the rotated difference at the minimizer is the same
    // quantity without the cancellation.
    const Complex rotation = std::exp(Complex(0.0, theta));
    ScalarField diff = q;
    for (int i = 0; i < diff.size(); ++i) diff[i] = rotation * q[i] - p[i];
    return {theta, sobolev_norm(diff, m)};
}

VectorField reconstruct_position(const VectorField& v, const Vec3& x0) {
    VectorField x(v.grid());
    const double h = v.grid().spacing();
    x[0] = x0;
    for (int i = 1; i < v.size(); ++i) x[i] = x[i - 1] + 0.5 * h * (v[i - 1] + v[i]);
    return x;
}

ClassicalHasimoto classical_hasimoto(const VectorField& v, double curvature_threshold) {
    const VectorField vs = derivative(v, 1);
    const VectorField vss = derivative(v, 2);
    const int n = v.size();
    const double h = v.grid().spacing();

    std::vector<double> kappa(n), tau(n, 0.0);
    std::vector<std::uint8_t> defined(n, 0);
    for (int i = 0; i < n; ++i) {
        kappa[i] = vs[i].norm();
        if (kappa[i] > curvature_threshold) {
            defined[i] = 1;
            tau[i] = v[i].cross(vs[i]).dot(vss[i]) / (kappa[i] * kappa[i]);
        }
    }

    ScalarField q(v.grid());
    double theta = 0.0;
    q[0] = kappa[0];
    for (int i = 1; i < n; ++i) {
        theta += 0.5 * h * (tau[i - 1] + tau[i]);
        q[i] = kappa[i] * std::exp(Complex(0.0, theta));
    }
    return {std::move(q), std::move(defined)};
}

} // namespace filament

#include "filament/calculus.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace filament {

namespace {

// Applies the order-m stencil at node i of an (N+1)-node field. `at` fetches
// a node value of any additive type (double, Complex, Vec3).
template <class T, class At>
T apply_stencil(const At& at, int i, int n_cells, int order, double h) {
    const int N = n_cells;
    switch (order) {
        case 1: {
            // One-sided rows with the leading truncation matched to the
            // centered interior (+h^2/6 f'''). A mismatched boundary constant
            // leaves an O(h^2) kink in error fields and caps their H^1
            // convergence at order 1.5.
            if (i == 0)
                return (at(0) * -2.0 + at(1) * 3.5 - at(2) * 2.0 + at(3) * 0.5) * (1.0 / h);
            if (i == N)
                return (at(N) * 2.0 - at(N - 1) * 3.5 + at(N - 2) * 2.0 - at(N - 3) * 0.5) *
                       (1.0 / h);
            return (at(i + 1) - at(i - 1)) * (1.0 / (2.0 * h));
        }
        case 2: {
            const double c = 1.0 / (h * h);
            if (i == 0) return (at(0) * 2.0 - at(1) * 5.0 + at(2) * 4.0 - at(3)) * c;
            if (i == N) return (at(N) * 2.0 - at(N - 1) * 5.0 + at(N - 2) * 4.0 - at(N - 3)) * c;
            return (at(i + 1) - at(i) * 2.0 + at(i - 1)) * c;
        }
        case 3: {
            const double c = 1.0 / (2.0 * h * h * h);
            if (i == 0)
                return (at(0) * -5.0 + at(1) * 18.0 - at(2) * 24.0 + at(3) * 14.0 - at(4) * 3.0) * c;
            if (i == 1)
                return (at(0) * -3.0 + at(1) * 10.0 - at(2) * 12.0 + at(3) * 6.0 - at(4)) * c;
            if (i == N)
                return (at(N) * 5.0 - at(N - 1) * 18.0 + at(N - 2) * 24.0 - at(N - 3) * 14.0 +
                        at(N - 4) * 3.0) * c;
            if (i == N - 1)
                return (at(N) * 3.0 - at(N - 1) * 10.0 + at(N - 2) * 12.0 - at(N - 3) * 6.0 +
                        at(N - 4)) * c;
            return (at(i + 2) - at(i + 1) * 2.0 + at(i - 1) * 2.0 - at(i - 2)) * c;
        }
        default:
            throw std::invalid_argument("derivative: order must be 1, 2 or 3");
    }
}

void check_order(const Grid& grid, int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("derivative: order must be 1, 2 or 3");
    const int min_nodes = (order == 3) ? 5 : order + 2;
    if (grid.nodes() < min_nodes)
        throw std::invalid_argument("derivative: grid too small for the boundary stencil");
}

// DCT-I (FFTW REDFT00) plans cached per size. Plan creation and execution are
// serialized; fields are copied through the cache's own fftw-aligned buffers.
struct DctPlan {
    int n = 0;
    double* buf_in = nullptr;
    double* buf_out = nullptr;
    fftw_plan plan = nullptr;

    explicit DctPlan(int size) : n(size) {
        buf_in = fftw_alloc_real(n);
        buf_out = fftw_alloc_real(n);
        plan = fftw_plan_r2r_1d(n, buf_in, buf_out, FFTW_REDFT00, FFTW_ESTIMATE);
    }
    ~DctPlan() {
        if (plan) fftw_destroy_plan(plan);
        fftw_free(buf_in);
        fftw_free(buf_out);
    }
    DctPlan(const DctPlan&) = delete;
    DctPlan& operator=(const DctPlan&) = delete;
};

std::mutex& dct_mutex() {
    static std::mutex m;
    return m;
}

// Unnormalized REDFT00: X_k = x_0 + (-1)^k x_{N} + 2 sum_{j=1..N-1} x_j cos(pi j k / N).
void dct1(std::vector<double>& x) {
    static std::map<int, std::unique_ptr<DctPlan>> cache;
    const int n = static_cast<int>(x.size());
    std::lock_guard<std::mutex> lock(dct_mutex());
    auto& entry = cache[n];
    if (!entry) entry = std::make_unique<DctPlan>(n);
    for (int i = 0; i < n; ++i) entry->buf_in[i] = x[i];
    fftw_execute(entry->plan);
    for (int i = 0; i < n; ++i) x[i] = entry->buf_out[i];
}

} // namespace

ScalarField derivative(const ScalarField& f, int order) {
    check_order(f.grid(), order);
    ScalarField out(f.grid());
    const auto at = [&f](int j) { return f[j]; };
    for (int i = 0; i < f.size(); ++i)
        out[i] = apply_stencil<Complex>(at, i, f.grid().cells(), order, f.grid().spacing());
    return out;
}

VectorField derivative(const VectorField& f, int order) {
    check_order(f.grid(), order);
    VectorField out(f.grid());
    const auto at = [&f](int j) -> const Vec3& { return f[j]; };
    for (int i = 0; i < f.size(); ++i)
        out[i] = apply_stencil<Vec3>(at, i, f.grid().cells(), order, f.grid().spacing());
    return out;
}

Complex integrate(const ScalarField& f) {
    const int N = f.grid().cells();
    Complex acc = 0.5 * (f[0] + f[N]);
    for (int i = 1; i < N; ++i) acc += f[i];
    return acc * f.grid().spacing();
}

double integrate_real(const Grid& grid, const std::vector<double>& node_values) {
    if (static_cast<int>(node_values.size()) != grid.nodes())
        throw std::invalid_argument("integrate_real: values.size() != nodes");
    const int N = grid.cells();
    double acc = 0.5 * (node_values[0] + node_values[N]);
    for (int i = 1; i < N; ++i) acc += node_values[i];
    return acc * grid.spacing();
}

double l2_norm(const ScalarField& f) {
    const int N = f.grid().cells();
    double acc = 0.5 * (std::norm(f[0]) + std::norm(f[N]));
    for (int i = 1; i < N; ++i) acc += std::norm(f[i]);
    return std::sqrt(acc * f.grid().spacing());
}

double l2_norm(const VectorField& f) {
    const int N = f.grid().cells();
    double acc = 0.5 * (f[0].squaredNorm() + f[N].squaredNorm());
    for (int i = 1; i < N; ++i) acc += f[i].squaredNorm();
    return std::sqrt(acc * f.grid().spacing());
}

namespace {

void check_sobolev_order(int m) {
    if (m < 0 || m > 3)
        throw std::invalid_argument("sobolev: order m must be in {0,1,2,3}");
}

} // namespace

double sobolev_norm(const ScalarField& f, int m) {
    check_sobolev_order(m);
    double sq = l2_norm(f) * l2_norm(f);
    for (int k = 1; k <= m; ++k) {
        const double nk = l2_norm(derivative(f, k));
        sq += nk * nk;
    }
    return std::sqrt(sq);
}

double sobolev_norm(const VectorField& f, int m) {
    check_sobolev_order(m);
    double sq = l2_norm(f) * l2_norm(f);
    for (int k = 1; k <= m; ++k) {
        const double nk = l2_norm(derivative(f, k));
        sq += nk * nk;
    }
    return std::sqrt(sq);
}

Complex sobolev_inner(const ScalarField& f, const ScalarField& g, int m) {
    require_same_grid(f.grid(), g.grid(), "sobolev_inner");
    check_sobolev_order(m);
    const auto l2_pair = [](const ScalarField& a, const ScalarField& b) {
        const int N = a.grid().cells();
        Complex acc = 0.5 * (a[0] * std::conj(b[0]) + a[N] * std::conj(b[N]));
        for (int i = 1; i < N; ++i) acc += a[i] * std::conj(b[i]);
        return acc * a.grid().spacing();
    };
    Complex acc = l2_pair(f, g);
    for (int k = 1; k <= m; ++k) acc += l2_pair(derivative(f, k), derivative(g, k));
    return acc;
}

std::vector<Complex> cosine_transform(const ScalarField& f) {
    const int n = f.size();
    const int N = f.grid().cells();
    std::vector<double> re(n), im(n);
    for (int i = 0; i < n; ++i) {
        re[i] = f[i].real();
        im[i] = f[i].imag();
    }
    dct1(re);
    dct1(im);
    // Natural-basis coefficients: f_j = sum_k c_k cos(pi k j / N).
    std::vector<Complex> c(n);
    for (int k = 0; k < n; ++k) {
        const double scale = (k == 0 || k == N) ? 1.0 / (2.0 * N) : 1.0 / N;
        c[k] = Complex(re[k] * scale, im[k] * scale);
    }
    return c;
}

ScalarField inverse_cosine_transform(const std::vector<Complex>& coeffs, const Grid& grid) {
    if (static_cast<int>(coeffs.size()) != grid.nodes())
        throw std::invalid_argument("inverse_cosine_transform: coeffs.size() != nodes");
    const int n = grid.nodes();
    const int N = grid.cells();
    std::vector<double> re(n), im(n);
    for (int k = 0; k < n; ++k) {
        const double scale = (k == 0 || k == N) ? 1.0 : 0.5;
        re[k] = coeffs[k].real() * scale;
        im[k] = coeffs[k].imag() * scale;
    }
    dct1(re);
    dct1(im);
    ScalarField out(grid);
    for (int j = 0; j < n; ++j) out[j] = Complex(re[j], im[j]);
    return out;
}

} // namespace filament

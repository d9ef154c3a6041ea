#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "filament/calculus.hpp"
#include "filament/experiments.hpp"

#include <cmath>
#include <numbers>

using namespace filament;
using doctest::Approx;

namespace {
const double pi = std::numbers::pi;

double sup_error(const ScalarField& f, const std::function<Complex(double)>& exact) {
    double err = 0.0;
    for (int i = 0; i < f.size(); ++i)
        err = std::max(err, std::abs(f[i] - exact(f.grid().node(i))));
    return err;
}
} // namespace

TEST_CASE("grid invariants") {
    Grid g(2.0, 100);
    CHECK(g.spacing() * g.cells() == Approx(g.length()).epsilon(1e-15));
    CHECK(g.nodes() == 101);
    CHECK_THROWS_AS(Grid(1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Grid(-1.0, 64), std::invalid_argument);
}

TEST_CASE("derivative of a constant vanishes") {
    Grid g(1.0, 64);
    ScalarField f(g, [](double) { return Complex(3.25, -1.5); });
    for (int order : {1, 2, 3}) {
        ScalarField d = derivative(f, order);
        for (int i = 0; i < d.size(); ++i) CHECK(std::abs(d[i]) < 1e-11);
    }
}

TEST_CASE("first derivative exact on affine data") {
    Grid g(1.0, 64);
    ScalarField f(g, [](double s) { return Complex(s, 0.0); });
    ScalarField d = derivative(f, 1);
    for (int i = 0; i < d.size(); ++i) CHECK(std::abs(d[i] - 1.0) < 1e-10);
}

TEST_CASE("derivatives exact on quadratics at every node") {
    Grid g(2.0, 32);
    ScalarField f(g, [](double s) { return Complex(1.0 + 0.5 * s - 2.0 * s * s, 0.0); });
    ScalarField d1 = derivative(f, 1);
    ScalarField d2 = derivative(f, 2);
    ScalarField d3 = derivative(f, 3);
    for (int i = 0; i < f.size(); ++i) {
        const double s = g.node(i);
        CHECK(std::abs(d1[i] - (0.5 - 4.0 * s)) < 1e-10);
        CHECK(std::abs(d2[i] - (-4.0)) < 1e-9);
        CHECK(std::abs(d3[i]) < 1e-8);
    }
}

TEST_CASE("second derivative of cos converges at second order") {
    const double L = 1.0;
    double prev = 0.0;
    for (int N : {64, 128, 256}) {
        Grid g(L, N);
        ScalarField f(g, [L](double s) { return Complex(std::cos(pi * s / L), 0.0); });
        const double err = sup_error(derivative(f, 2), [L](double s) {
            return Complex(-(pi / L) * (pi / L) * std::cos(pi * s / L), 0.0);
        });
        if (prev > 0.0) CHECK(prev / err > 3.5);
        prev = err;
    }
}

TEST_CASE("all orders converge at factor >= 3.5 per refinement on smooth data") {
    for (int order : {1, 2, 3}) {
        double prev = 0.0;
        for (int N : {128, 256, 512}) {
            Grid g(pi, N);
            ScalarField f(g, [](double s) { return Complex(std::exp(std::sin(2 * s)), 0.0); });
            ScalarField d = derivative(f, order);
            // error against a refined reference of the same operator
            Grid gf(pi, 2 * N);
            ScalarField ff(gf, [](double s) { return Complex(std::exp(std::sin(2 * s)), 0.0); });
            ScalarField df = derivative(ff, order);
            double err = 0.0;
            for (int i = 0; i < d.size(); ++i) err = std::max(err, std::abs(d[i] - df[2 * i]));
            if (prev > 0.0) CHECK(prev / err > 3.5);
            prev = err;
        }
    }
}

TEST_CASE("derivative rejects bad order") {
    Grid g(1.0, 16);
    ScalarField f(g);
    CHECK_THROWS_AS(derivative(f, 0), std::invalid_argument);
    CHECK_THROWS_AS(derivative(f, 4), std::invalid_argument);
}

TEST_CASE("trapezoid quadrature") {
    SUBCASE("constant over [0, pi]") {
        Grid g(pi, 50);
        ScalarField f(g, [](double) { return Complex(1.0, 0.0); });
        CHECK(integrate(f).real() == Approx(pi).epsilon(1e-14));
    }
    SUBCASE("affine is exact") {
        Grid g(1.0, 37);
        ScalarField f(g, [](double s) { return Complex(s, 0.0); });
        CHECK(integrate(f).real() == Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("sin^2 over [0, 2]") {
        Grid g(2.0, 256);
        ScalarField f(g, [](double s) {
            const double v = std::sin(pi * s / 2.0);
            return Complex(v * v, 0.0);
        });
        CHECK(integrate(f).real() == Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("discrete integration by parts holds to O(ds^2)") {
    for (int N : {128, 256}) {
        Grid g(pi, N);
        ScalarField f(g, [](double s) { return Complex(std::sin(s), 0.0); });
        ScalarField gg(g, [](double s) { return Complex(std::cos(2 * s) + 0.3 * s * s, 0.0); });
        ScalarField df = derivative(f, 1);
        ScalarField dg = derivative(gg, 1);
        ScalarField lhs(g);
        for (int i = 0; i < lhs.size(); ++i) lhs[i] = df[i] * gg[i] + f[i] * dg[i];
        const double boundary = (f[N] * gg[N] - f[0] * gg[0]).real();
        const double defect = std::abs(integrate(lhs).real() - boundary);
        CHECK(defect < 20.0 * g.spacing() * g.spacing());
    }
}

TEST_CASE("sobolev norms") {
    SUBCASE("constant -1/R in H^2") {
        Grid g(pi, 128);
        ScalarField f(g, [](double) { return Complex(-1.0, 0.0); });
        CHECK(sobolev_norm(f, 2) == Approx(std::sqrt(pi)).epsilon(1e-10));
    }
    SUBCASE("zero field") {
        Grid g(1.0, 16);
        CHECK(sobolev_norm(ScalarField(g), 3) == 0.0);
        CHECK(sobolev_norm(VectorField(g), 2) == 0.0);
    }
    SUBCASE("cos in H^1 on [0, pi]") {
        Grid g(pi, 512);
        ScalarField f(g, [](double s) { return Complex(std::cos(s), 0.0); });
        CHECK(sobolev_norm(f, 1) == Approx(std::sqrt(pi)).epsilon(1e-4));
    }
    SUBCASE("rejects m > 3") {
        Grid g(1.0, 16);
        CHECK_THROWS_AS(sobolev_norm(ScalarField(g), 4), std::invalid_argument);
    }
}

TEST_CASE("sobolev inner product") {
    Grid g(1.0, 64);
    SUBCASE("inner(f, f, m) equals norm squared") {
        DeterministicRng rng(11);
        ScalarField f(g, [&](double) { return Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)); });
        for (int m : {0, 1, 2}) {
            const Complex ip = sobolev_inner(f, f, m);
            CHECK(ip.imag() == Approx(0.0).epsilon(1e-12));
            CHECK(ip.real() == Approx(std::pow(sobolev_norm(f, m), 2)).epsilon(1e-12));
        }
    }
    SUBCASE("conjugate linearity in the second slot") {
        ScalarField one(g, [](double) { return Complex(1.0, 0.0); });
        ScalarField imag(g, [](double) { return Complex(0.0, 1.0); });
        const Complex ip = sobolev_inner(one, imag, 0);
        CHECK(ip.real() == Approx(0.0).epsilon(1e-14));
        CHECK(ip.imag() == Approx(-1.0).epsilon(1e-14));
    }
    SUBCASE("cosine modes are orthogonal") {
        Grid gp(pi, 256);
        ScalarField c1(gp, [](double s) { return Complex(std::cos(s), 0.0); });
        ScalarField c2(gp, [](double s) { return Complex(std::cos(2 * s), 0.0); });
        CHECK(std::abs(sobolev_inner(c1, c2, 0)) < gp.spacing() * gp.spacing());
    }
    SUBCASE("grid mismatch is rejected") {
        Grid other(1.0, 32);
        CHECK_THROWS_AS(sobolev_inner(ScalarField(g), ScalarField(other), 0),
                        std::invalid_argument);
    }
}

TEST_CASE("cosine transform basics") {
    Grid g(pi, 64);
    SUBCASE("constant maps to the zero mode") {
        ScalarField f(g, [](double) { return Complex(2.5, -0.5); });
        auto c = cosine_transform(f);
        CHECK(std::abs(c[0] - Complex(2.5, -0.5)) < 1e-12);
        for (std::size_t k = 1; k < c.size(); ++k) CHECK(std::abs(c[k]) < 1e-12);
    }
    SUBCASE("pure mode k=3") {
        ScalarField f(g, [&](double s) { return Complex(std::cos(3 * s), 0.0); });
        auto c = cosine_transform(f);
        CHECK(std::abs(c[3] - 1.0) < 1e-10);
        for (std::size_t k = 0; k < c.size(); ++k)
            if (k != 3) CHECK(std::abs(c[k]) < 1e-10);
    }
}

TEST_CASE("cosine roundtrip is the identity to 1e-12") {
    for (int N : {32, 100, 257}) {
        Grid g(1.7, N);
        DeterministicRng rng(N);
        ScalarField f(g, [&](double) { return Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)); });
        ScalarField back = inverse_cosine_transform(cosine_transform(f), g);
        for (int i = 0; i < f.size(); ++i) CHECK(std::abs(back[i] - f[i]) < 1e-12);
    }
}

TEST_CASE("nested restriction picks shared nodes") {
    Grid fine(pi, 128);
    Grid coarse(pi, 32);
    ScalarField f(fine, [](double s) { return Complex(std::sin(s), s); });
    ScalarField r = restrict_to(f, coarse);
    for (int i = 0; i < r.size(); ++i) CHECK(r[i] == f[4 * i]);
    CHECK_THROWS_AS(restrict_to(f, Grid(pi, 48)), std::invalid_argument);
}

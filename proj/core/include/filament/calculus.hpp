#pragma once

#include "filament/grid.hpp"

namespace filament {

/// Finite-difference s-derivative of order 1, 2 or 3.
/// Second-order centered stencils at interior nodes, second-order one-sided
/// stencils at the boundary (3/4/5 points for order 1/2/3).
ScalarField derivative(const ScalarField& f, int order);
VectorField derivative(const VectorField& f, int order);

/// Trapezoidal quadrature over [0, L].
Complex integrate(const ScalarField& f);
double integrate_real(const Grid& grid, const std::vector<double>& node_values);

/// L2 norms via trapezoidal quadrature.
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);

/// H^m norm, m <= 3: sqrt(sum_{k<=m} ||d^k f||_{L2}^2), with the k-th
/// derivative taken by the finite-difference operators above.
double sobolev_norm(const ScalarField& f, int m);
double sobolev_norm(const VectorField& f, int m);

/// H^m inner product, linear in f and conjugate-linear in g.
Complex sobolev_inner(const ScalarField& f, const ScalarField& g, int m);

/// Expansion in the Neumann-compatible basis cos(k*pi*s/L), k = 0..N, on the
/// node set. inverse_cosine_transform(cosine_transform(f)) == f to 1e-12.
std::vector<Complex> cosine_transform(const ScalarField& f);
ScalarField inverse_cosine_transform(const std::vector<Complex>& coeffs, const Grid& grid);

} // namespace filament

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace filament {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;

/// Uniform arclength mesh on [0, L]. Cell count N, node count N+1,
/// endpoints included (boundary traces are first-class data).
class Grid {
public:
    Grid(double length, int cells) : length_(length), cells_(cells) {
        if (!(length > 0.0))
            throw std::invalid_argument("Grid: length must be positive");
        if (cells < 8)
            throw std::invalid_argument(
                "Grid: need at least 8 cells for third-derivative boundary stencils");
    }

    double length() const { return length_; }
    int cells() const { return cells_; }
    int nodes() const { return cells_ + 1; }
    double spacing() const { return length_ / cells_; }
    double node(int i) const { return length_ * i / cells_; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.length_ == b.length_ && a.cells_ == b.cells_;
    }
    friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

private:
    double length_;
    int cells_;
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (a != b)
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

/// Complex-valued samples on the nodes of a Grid.
class ScalarField {
public:
    explicit ScalarField(const Grid& grid)
        : grid_(grid), values_(grid.nodes(), Complex(0.0, 0.0)) {}

    ScalarField(const Grid& grid, std::vector<Complex> values)
        : grid_(grid), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != grid_.nodes())
            throw std::invalid_argument("ScalarField: values.size() != nodes");
    }

    /// Sample a function of arclength s on the nodes.
    ScalarField(const Grid& grid, const std::function<Complex(double)>& f)
        : grid_(grid), values_(grid.nodes()) {
        for (int i = 0; i < grid.nodes(); ++i) values_[i] = f(grid.node(i));
    }

    const Grid& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    const std::vector<Complex>& values() const { return values_; }
    std::vector<Complex>& values() { return values_; }
    Complex operator[](int i) const { return values_[i]; }
    Complex& operator[](int i) { return values_[i]; }

private:
    Grid grid_;
    std::vector<Complex> values_;
};

/// R^3-valued samples on the nodes of a Grid.
class VectorField {
public:
    explicit VectorField(const Grid& grid)
        : grid_(grid), values_(grid.nodes(), Vec3::Zero()) {}

    VectorField(const Grid& grid, std::vector<Vec3> values)
        : grid_(grid), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != grid_.nodes())
            throw std::invalid_argument("VectorField: values.size() != nodes");
    }

    VectorField(const Grid& grid, const std::function<Vec3(double)>& f)
        : grid_(grid), values_(grid.nodes()) {
        for (int i = 0; i < grid.nodes(); ++i) values_[i] = f(grid.node(i));
    }

    const Grid& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    const std::vector<Vec3>& values() const { return values_; }
    std::vector<Vec3>& values() { return values_; }
    const Vec3& operator[](int i) const { return values_[i]; }
    Vec3& operator[](int i) { return values_[i]; }

private:
    Grid grid_;
    std::vector<Vec3> values_;
};

/// Restrict a field to a coarser nested grid (same L, coarse N dividing fine N)
/// by node decimation; exact for nested uniform meshes.
template <class Field>
Field restrict_to(const Field& fine, const Grid& coarse) {
    const Grid& fg = fine.grid();
    if (fg.length() != coarse.length() || fg.cells() % coarse.cells() != 0)
        throw std::invalid_argument("restrict_to: grids are not nested");
    const int stride = fg.cells() / coarse.cells();
    Field out(coarse);
    for (int i = 0; i < coarse.nodes(); ++i) out[i] = fine[i * stride];
    return out;
}

} // namespace filament

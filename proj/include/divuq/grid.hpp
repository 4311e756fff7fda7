// Uniform vertex-centred 2D grid and the deterministic fields defined on it.
//
// Layout is row-major with x fastest: vertex (i, j) lives at j * nx + i.
// Cells are the (nx - 1) x (ny - 1) quads between vertices.
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "divuq/error.hpp"

namespace divuq {

class UniformGrid2 {
public:
    UniformGrid2(std::size_t nx, std::size_t ny, double dx, double dy);

    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }
    double dx() const noexcept { return dx_; }
    double dy() const noexcept { return dy_; }

    std::size_t vertex_count() const noexcept { return nx_ * ny_; }
    std::size_t cell_count() const noexcept { return (nx_ - 1) * (ny_ - 1); }

    // Unchecked; see vertex_index() for the checked form.
    std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx_ + i; }

    double x(std::size_t i) const noexcept { return static_cast<double>(i) * dx_; }
    double y(std::size_t j) const noexcept { return static_cast<double>(j) * dy_; }
    double width() const noexcept { return x(nx_ - 1); }
    double height() const noexcept { return y(ny_ - 1); }

    bool operator==(const UniformGrid2&) const = default;

private:
    std::size_t nx_;
    std::size_t ny_;
    double dx_;
    double dy_;
};

/// Linear index of vertex (i, j). Throws ErrorKind::Index when out of range.
std::size_t vertex_index(const UniformGrid2& grid, std::size_t i, std::size_t j);

class ScalarField2 {
public:
    ScalarField2(UniformGrid2 grid, std::vector<double> values);

    const UniformGrid2& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[grid_.index(i, j)]; }

    bool operator==(const ScalarField2&) const = default;

private:
    UniformGrid2 grid_;
    std::vector<double> values_;
};

class VectorField2 {
public:
    VectorField2(UniformGrid2 grid, std::vector<double> u, std::vector<double> v);

    const UniformGrid2& grid() const noexcept { return grid_; }
    std::span<const double> u() const noexcept { return u_; }
    std::span<const double> v() const noexcept { return v_; }

    bool operator==(const VectorField2&) const = default;

private:
    UniformGrid2 grid_;
    std::vector<double> u_;
    std::vector<double> v_;
};

/// Ordered ensemble of vector fields on one grid. A single member is allowed
/// (file containers for means/sigmas); statistics require two or more.
class Ensemble2 {
public:
    Ensemble2(UniformGrid2 grid, std::vector<VectorField2> members);

    const UniformGrid2& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return members_.size(); }
    const VectorField2& operator[](std::size_t k) const noexcept { return members_[k]; }
    std::span<const VectorField2> members() const noexcept { return members_; }

    bool operator==(const Ensemble2&) const = default;

private:
    UniformGrid2 grid_;
    std::vector<VectorField2> members_;
};

std::pair<double, double> scalar_minmax(const ScalarField2& field);

}  // namespace divuq

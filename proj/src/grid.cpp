#include "divuq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace divuq {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) {
            throw Error(ErrorKind::Data,
                        std::string(what) + ": non-finite value at index " + std::to_string(k));
        }
    }
}

void require_length(std::size_t actual, const UniformGrid2& grid, const char* what) {
    if (actual != grid.vertex_count()) {
        throw Error(ErrorKind::Shape, std::string(what) + ": expected " +
                                          std::to_string(grid.vertex_count()) + " values, got " +
                                          std::to_string(actual));
    }
}

}  // namespace

UniformGrid2::UniformGrid2(std::size_t nx, std::size_t ny, double dx, double dy)
    : nx_(nx), ny_(ny), dx_(dx), dy_(dy) {
    ensure(nx >= 2 && ny >= 2, ErrorKind::Shape, "UniformGrid2 needs nx >= 2 and ny >= 2");
    ensure(std::isfinite(dx) && std::isfinite(dy) && dx > 0.0 && dy > 0.0, ErrorKind::Data,
           "UniformGrid2 spacing must be positive and finite");
}

std::size_t vertex_index(const UniformGrid2& grid, std::size_t i, std::size_t j) {
    if (i >= grid.nx() || j >= grid.ny()) {
        throw Error(ErrorKind::Index, "vertex (" + std::to_string(i) + ", " + std::to_string(j) +
                                          ") outside " + std::to_string(grid.nx()) + "x" +
                                          std::to_string(grid.ny()) + " grid");
    }
    return grid.index(i, j);
}

ScalarField2::ScalarField2(UniformGrid2 grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    require_length(values_.size(), grid_, "ScalarField2");
    require_finite(values_, "ScalarField2");
}

VectorField2::VectorField2(UniformGrid2 grid, std::vector<double> u, std::vector<double> v)
    : grid_(grid), u_(std::move(u)), v_(std::move(v)) {
    require_length(u_.size(), grid_, "VectorField2.u");
    require_length(v_.size(), grid_, "VectorField2.v");
    require_finite(u_, "VectorField2.u");
    require_finite(v_, "VectorField2.v");
}

Ensemble2::Ensemble2(UniformGrid2 grid, std::vector<VectorField2> members)
    : grid_(grid), members_(std::move(members)) {
    ensure(!members_.empty(), ErrorKind::InsufficientEnsemble, "Ensemble2 has no members");
    for (const auto& m : members_) {
        ensure(m.grid() == grid_, ErrorKind::Shape, "Ensemble2 member grid differs from ensemble grid");
    }
}

std::pair<double, double> scalar_minmax(const ScalarField2& field) {
    auto [lo, hi] = std::minmax_element(field.values().begin(), field.values().end());
    return {*lo, *hi};
}

}  // namespace divuq

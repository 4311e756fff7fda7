// Finite-difference divergence of deterministic fields and closed-form
// propagation of independent Gaussian uncertainty through the same stencil.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "divuq/gaussian_fit.hpp"
#include "divuq/grid.hpp"
#include "divuq/parallel.hpp"

namespace divuq {

/// Neighbours and denominators of the divergence stencil at one vertex.
/// Interior: (i+1, i-1) over 2dx. Boundary: one-sided pair over dx. The same
/// layout applies to y with rows j+1, j-1.
struct Stencil {
    std::size_t x_plus;
    std::size_t x_minus;
    double x_denom;
    std::size_t y_plus;
    std::size_t y_minus;
    double y_denom;
};

Stencil stencil_at(const UniformGrid2& grid, std::size_t i, std::size_t j) noexcept;

// Every divergence in the library goes through these two expressions; keeping
// one evaluation order makes serial, parallel, MC and analytic means agree
// bit for bit.
inline double stencil_divergence(double u_plus, double u_minus, double v_plus, double v_minus,
                                 const Stencil& s) noexcept {
    return (u_plus - u_minus) / s.x_denom + (v_plus - v_minus) / s.y_denom;
}

inline double stencil_variance(double su_plus, double su_minus, double sv_plus, double sv_minus,
                               const Stencil& s) noexcept {
    const double a = su_plus / s.x_denom;
    const double b = su_minus / s.x_denom;
    const double c = sv_plus / s.y_denom;
    const double d = sv_minus / s.y_denom;
    return a * a + b * b + c * c + d * d;
}

/// Per-vertex N(mu, sigma^2) of the divergence.
class GaussianScalarField {
public:
    GaussianScalarField(UniformGrid2 grid, std::vector<double> mu, std::vector<double> sigma);

    const UniformGrid2& grid() const noexcept { return grid_; }
    std::span<const double> mu() const noexcept { return mu_; }
    std::span<const double> sigma() const noexcept { return sigma_; }

    ScalarField2 mean_field() const { return ScalarField2(grid_, mu_); }
    ScalarField2 sigma_field() const { return ScalarField2(grid_, sigma_); }

    bool operator==(const GaussianScalarField&) const = default;

private:
    UniformGrid2 grid_;
    std::vector<double> mu_;
    std::vector<double> sigma_;
};

ScalarField2 divergence_deterministic(const VectorField2& field, const ParallelConfig& config = {});

GaussianScalarField propagate_divergence(const GaussianVectorField& model,
                                         const ParallelConfig& config = {});

struct NormalParams {
    double mu;
    double sigma;
};

/// The four stencil neighbours of a single interior vertex.
struct DivergenceNeighbors {
    NormalParams u_minus;
    NormalParams u_plus;
    NormalParams v_minus;
    NormalParams v_plus;
};

/// Closed-form divergence distribution at one interior vertex.
NormalParams propagate_single(const DivergenceNeighbors& n, double dx, double dy);

}  // namespace divuq

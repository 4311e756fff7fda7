// Per-vertex independent Gaussian model of an ensemble, and the
// magnitude-gradient preprocessing applied to each member.
#pragma once

#include <span>
#include <vector>

#include "divuq/grid.hpp"
#include "divuq/parallel.hpp"

namespace divuq {

/// Independent N(mu, sigma^2) per vertex and component. Sigma is stored, not
/// variance.
class GaussianVectorField {
public:
    GaussianVectorField(UniformGrid2 grid, std::vector<double> mu_u, std::vector<double> mu_v,
                        std::vector<double> sigma_u, std::vector<double> sigma_v);
    GaussianVectorField(const VectorField2& mean, const VectorField2& sigma);

    const UniformGrid2& grid() const noexcept { return grid_; }
    std::span<const double> mu_u() const noexcept { return mu_u_; }
    std::span<const double> mu_v() const noexcept { return mu_v_; }
    std::span<const double> sigma_u() const noexcept { return sigma_u_; }
    std::span<const double> sigma_v() const noexcept { return sigma_v_; }

    VectorField2 mean_field() const;
    VectorField2 sigma_field() const;

    bool operator==(const GaussianVectorField&) const = default;

private:
    UniformGrid2 grid_;
    std::vector<double> mu_u_;
    std::vector<double> mu_v_;
    std::vector<double> sigma_u_;
    std::vector<double> sigma_v_;
};

/// Sample mean and Bessel-corrected (m - 1) standard deviation per vertex and
/// component. The result does not depend on member order. Throws
/// ErrorKind::InsufficientEnsemble for fewer than two members.
GaussianVectorField fit_gaussian(const Ensemble2& ensemble, const ParallelConfig& config = {});

ScalarField2 velocity_magnitude(const VectorField2& member);

/// Central differences inside, first-order one-sided differences on the
/// boundary (forward at index 0, backward at the last index).
VectorField2 gradient(const ScalarField2& field);

/// Member k of the result is gradient(velocity_magnitude(member k)).
Ensemble2 gradient_ensemble(const Ensemble2& ensemble);

}  // namespace divuq

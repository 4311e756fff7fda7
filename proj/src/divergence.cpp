#include "divuq/divergence.hpp"

#include <cmath>

namespace divuq {

Stencil stencil_at(const UniformGrid2& grid, std::size_t i, std::size_t j) noexcept {
    Stencil s{};
    const std::size_t nx = grid.nx();
    const std::size_t ny = grid.ny();

    if (i == 0) {
        s.x_plus = grid.index(1, j);
        s.x_minus = grid.index(0, j);
        s.x_denom = grid.dx();
    } else if (i == nx - 1) {
        s.x_plus = grid.index(nx - 1, j);
        s.x_minus = grid.index(nx - 2, j);
        s.x_denom = grid.dx();
    } else {
        s.x_plus = grid.index(i + 1, j);
        s.x_minus = grid.index(i - 1, j);
        s.x_denom = 2.0 * grid.dx();
    }

    if (j == 0) {
        s.y_plus = grid.index(i, 1);
        s.y_minus = grid.index(i, 0);
        s.y_denom = grid.dy();
    } else if (j == ny - 1) {
        s.y_plus = grid.index(i, ny - 1);
        s.y_minus = grid.index(i, ny - 2);
        s.y_denom = grid.dy();
    } else {
        s.y_plus = grid.index(i, j + 1);
        s.y_minus = grid.index(i, j - 1);
        s.y_denom = 2.0 * grid.dy();
    }
    return s;
}

GaussianScalarField::GaussianScalarField(UniformGrid2 grid, std::vector<double> mu,
                                         std::vector<double> sigma)
    : grid_(grid), mu_(std::move(mu)), sigma_(std::move(sigma)) {
    ScalarField2 check_mu(grid_, mu_);
    ScalarField2 check_sigma(grid_, sigma_);
    for (double s : sigma_) ensure(s >= 0.0, ErrorKind::Data, "divergence sigma must be non-negative");
}

ScalarField2 divergence_deterministic(const VectorField2& field, const ParallelConfig& config) {
    const auto& grid = field.grid();
    const auto u = field.u();
    const auto v = field.v();
    std::vector<double> out(grid.vertex_count());
    parallel_for(grid.vertex_count(), config, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const Stencil s = stencil_at(grid, k % grid.nx(), k / grid.nx());
            out[k] = stencil_divergence(u[s.x_plus], u[s.x_minus], v[s.y_plus], v[s.y_minus], s);
        }
    });
    return ScalarField2(grid, std::move(out));
}

GaussianScalarField propagate_divergence(const GaussianVectorField& model,
                                         const ParallelConfig& config) {
    const auto& grid = model.grid();
    const auto mu_u = model.mu_u();
    const auto mu_v = model.mu_v();
    const auto su = model.sigma_u();
    const auto sv = model.sigma_v();
    std::vector<double> mu(grid.vertex_count());
    std::vector<double> sigma(grid.vertex_count());

    parallel_for(grid.vertex_count(), config, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const Stencil s = stencil_at(grid, k % grid.nx(), k / grid.nx());
            mu[k] = stencil_divergence(mu_u[s.x_plus], mu_u[s.x_minus], mu_v[s.y_plus],
                                       mu_v[s.y_minus], s);
            sigma[k] = std::sqrt(
                stencil_variance(su[s.x_plus], su[s.x_minus], sv[s.y_plus], sv[s.y_minus], s));
        }
    });
    return GaussianScalarField(grid, std::move(mu), std::move(sigma));
}

NormalParams propagate_single(const DivergenceNeighbors& n, double dx, double dy) {
    ensure(dx > 0.0 && dy > 0.0, ErrorKind::Data, "grid spacing must be positive");
    const Stencil s{1, 0, 2.0 * dx, 3, 2, 2.0 * dy};
    return {stencil_divergence(n.u_plus.mu, n.u_minus.mu, n.v_plus.mu, n.v_minus.mu, s),
            std::sqrt(stencil_variance(n.u_plus.sigma, n.u_minus.sigma, n.v_plus.sigma,
                                       n.v_minus.sigma, s))};
}

}  // namespace divuq

#include "divuq/gaussian_fit.hpp"

#include <algorithm>
#include <cmath>

#include "divuq/divergence.hpp"

namespace divuq {

namespace {

void require_sigma(std::span<const double> sigma, const char* what) {
    for (double s : sigma) {
        ensure(s >= 0.0, ErrorKind::Data, std::string(what) + " must be non-negative");
    }
}

// Welford over sorted values: order-independent, and exactly zero spread for
// identical inputs.
std::pair<double, double> mean_and_std(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (double x : values) {
        ++k;
        const double delta = x - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (x - mean);
    }
    const double var = values.size() > 1 ? m2 / static_cast<double>(values.size() - 1) : 0.0;
    return {mean, std::sqrt(std::max(var, 0.0))};
}

}  // namespace

GaussianVectorField::GaussianVectorField(UniformGrid2 grid, std::vector<double> mu_u,
                                         std::vector<double> mu_v, std::vector<double> sigma_u,
                                         std::vector<double> sigma_v)
    : grid_(grid),
      mu_u_(std::move(mu_u)),
      mu_v_(std::move(mu_v)),
      sigma_u_(std::move(sigma_u)),
      sigma_v_(std::move(sigma_v)) {
    // VectorField2 validates length and finiteness.
    VectorField2 check_mu(grid_, mu_u_, mu_v_);
    VectorField2 check_sigma(grid_, sigma_u_, sigma_v_);
    require_sigma(sigma_u_, "sigma_u");
    require_sigma(sigma_v_, "sigma_v");
}

GaussianVectorField::GaussianVectorField(const VectorField2& mean, const VectorField2& sigma)
    : GaussianVectorField(mean.grid(), {mean.u().begin(), mean.u().end()},
                          {mean.v().begin(), mean.v().end()}, {sigma.u().begin(), sigma.u().end()},
                          {sigma.v().begin(), sigma.v().end()}) {
    ensure(mean.grid() == sigma.grid(), ErrorKind::Shape, "mean and sigma fields on different grids");
}

VectorField2 GaussianVectorField::mean_field() const { return VectorField2(grid_, mu_u_, mu_v_); }

VectorField2 GaussianVectorField::sigma_field() const {
    return VectorField2(grid_, sigma_u_, sigma_v_);
}

GaussianVectorField fit_gaussian(const Ensemble2& ensemble, const ParallelConfig& config) {
    const std::size_t m = ensemble.size();
    ensure(m >= 2, ErrorKind::InsufficientEnsemble,
           "fit_gaussian needs at least 2 members, got " + std::to_string(m));

    const auto& grid = ensemble.grid();
    const std::size_t n = grid.vertex_count();
    std::vector<double> mu_u(n), mu_v(n), sigma_u(n), sigma_v(n);

    parallel_for(n, config, [&](std::size_t begin, std::size_t end) {
        std::vector<double> buffer(m);
        for (std::size_t k = begin; k < end; ++k) {
            for (std::size_t e = 0; e < m; ++e) buffer[e] = ensemble[e].u()[k];
            std::tie(mu_u[k], sigma_u[k]) = mean_and_std(buffer);
            for (std::size_t e = 0; e < m; ++e) buffer[e] = ensemble[e].v()[k];
            std::tie(mu_v[k], sigma_v[k]) = mean_and_std(buffer);
        }
    });
    return GaussianVectorField(grid, std::move(mu_u), std::move(mu_v), std::move(sigma_u),
                               std::move(sigma_v));
}

ScalarField2 velocity_magnitude(const VectorField2& member) {
    const auto u = member.u();
    const auto v = member.v();
    std::vector<double> out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = std::sqrt(u[k] * u[k] + v[k] * v[k]);
    return ScalarField2(member.grid(), std::move(out));
}

VectorField2 gradient(const ScalarField2& field) {
    const auto& grid = field.grid();
    const auto s = field.values();
    std::vector<double> gx(grid.vertex_count()), gy(grid.vertex_count());
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const Stencil st = stencil_at(grid, i, j);
            const std::size_t k = grid.index(i, j);
            gx[k] = (s[st.x_plus] - s[st.x_minus]) / st.x_denom;
            gy[k] = (s[st.y_plus] - s[st.y_minus]) / st.y_denom;
        }
    }
    return VectorField2(grid, std::move(gx), std::move(gy));
}

Ensemble2 gradient_ensemble(const Ensemble2& ensemble) {
    std::vector<VectorField2> out;
    out.reserve(ensemble.size());
    for (const auto& member : ensemble.members()) out.push_back(gradient(velocity_magnitude(member)));
    return Ensemble2(ensemble.grid(), std::move(out));
}

}  // namespace divuq

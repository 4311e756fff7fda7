#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "divuq/divergence.hpp"
#include "divuq/gaussian_fit.hpp"
#include "oracles.hpp"

using namespace divuq;

namespace {

VectorField2 constant_field(const UniformGrid2& g, double u, double v) {
    return VectorField2(g, std::vector<double>(g.vertex_count(), u), std::vector<double>(g.vertex_count(), v));
}

std::vector<VectorField2> random_members(const UniformGrid2& g, std::size_t m, double mean, double sd,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(mean, sd);
    std::vector<VectorField2> members;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<double> u(g.vertex_count()), v(g.vertex_count());
        for (auto& x : u) x = z(rng);
        for (auto& x : v) x = z(rng);
        members.emplace_back(g, std::move(u), std::move(v));
    }
    return members;
}

}  // namespace

TEST_CASE("two-point fit") {
    const UniformGrid2 g(2, 2, 1.0, 1.0);
    const auto fit = fit_gaussian(Ensemble2(g, {constant_field(g, 1.0, 0.0), constant_field(g, 3.0, 0.0)}));
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(fit.mu_u()[k] == 2.0);
        CHECK(fit.sigma_u()[k] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        CHECK(fit.mu_v()[k] == 0.0);
        CHECK(fit.sigma_v()[k] == 0.0);
    }
}

TEST_CASE("identical members give zero sigma and the member as mean") {
    const UniformGrid2 g(7, 5, 0.3, 0.7);
    const auto member = random_members(g, 1, 0.0, 3.0, 9)[0];
    const auto fit = fit_gaussian(Ensemble2(g, {member, member, member, member, member}));
    CHECK(fit.mean_field() == member);
    for (std::size_t k = 0; k < g.vertex_count(); ++k) {
        CHECK(fit.sigma_u()[k] == 0.0);
        CHECK(fit.sigma_v()[k] == 0.0);
    }
}

TEST_CASE("fewer than two members is an insufficient ensemble") {
    const UniformGrid2 g(3, 3, 1.0, 1.0);
    try {
        fit_gaussian(Ensemble2(g, {constant_field(g, 1.0, 1.0)}));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InsufficientEnsemble);
    }
}

TEST_CASE("fit does not depend on member order") {
    const UniformGrid2 g(9, 8, 1.0, 1.0);
    auto members = random_members(g, 13, 1.0, 2.0, 3);
    const auto reference = fit_gaussian(Ensemble2(g, members));
    std::mt19937 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(members.begin(), members.end(), rng);
        CHECK(fit_gaussian(Ensemble2(g, members)) == reference);
    }
}

TEST_CASE("fit matches independent sample statistics and the sampling distribution") {
    const UniformGrid2 g(100, 100, 1.0, 1.0);
    const std::size_t m = 20;
    const auto members = random_members(g, m, 5.0, 0.5, 2024);
    const auto fit = fit_gaussian(Ensemble2(g, members));

    std::size_t mean_ok = 0, sigma_in_bracket = 0;
    for (std::size_t k = 0; k < g.vertex_count(); ++k) {
        for (int comp = 0; comp < 2; ++comp) {
            std::vector<double> xs;
            for (const auto& mem : members) xs.push_back(comp == 0 ? mem.u()[k] : mem.v()[k]);
            const auto [mean, sd] = oracle::sample_stats(xs);
            const double mu = comp == 0 ? fit.mu_u()[k] : fit.mu_v()[k];
            const double sigma = comp == 0 ? fit.sigma_u()[k] : fit.sigma_v()[k];
            CHECK(mu == doctest::Approx(mean).epsilon(1e-13));
            CHECK(sigma == doctest::Approx(sd).epsilon(1e-12));
            mean_ok += std::abs(mu - 5.0) <= 0.5;
            sigma_in_bracket += (sigma >= 0.3 && sigma <= 0.7);
        }
    }
    const double n = 2.0 * g.vertex_count();
    CHECK(mean_ok / n >= 0.99);
    const double p = oracle::kChi2CoverageM20_06_14;
    const double sd = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(sigma_in_bracket / n - p) <= 4 * sd);
}

TEST_CASE("velocity magnitude") {
    const UniformGrid2 g(2, 2, 1.0, 1.0);
    CHECK(velocity_magnitude(constant_field(g, 3.0, 4.0)).values()[0] == 5.0);
    CHECK(velocity_magnitude(constant_field(g, 0.0, 0.0)).values()[3] == 0.0);

    const UniformGrid2 h(31, 17, 1.0, 1.0);
    const auto f = random_members(h, 1, 0.0, 10.0, 77)[0];
    const auto mag = velocity_magnitude(f);
    for (std::size_t k = 0; k < h.vertex_count(); ++k) {
        CHECK(mag[k] == std::sqrt(f.u()[k] * f.u()[k] + f.v()[k] * f.v()[k]));
    }
}

TEST_CASE("gradient of affine and constant fields is exact") {
    for (double step : {1.0, 0.25, 0.5}) {
        const UniformGrid2 g(9, 6, step, step * 2);
        std::vector<double> s(g.vertex_count()), c(g.vertex_count(), -4.5);
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i) s[g.index(i, j)] = 2 * g.x(i) + 3 * g.y(j);
        const auto grad = gradient(ScalarField2(g, s));
        const auto flat = gradient(ScalarField2(g, c));
        for (std::size_t k = 0; k < g.vertex_count(); ++k) {
            CHECK(grad.u()[k] == 2.0);
            CHECK(grad.v()[k] == 3.0);
            CHECK(flat.u()[k] == 0.0);
            CHECK(flat.v()[k] == 0.0);
        }
    }
}

TEST_CASE("gradient of x^2 is second-order accurate inside") {
    const UniformGrid2 g(101, 4, 0.01, 0.01);
    std::vector<double> s(g.vertex_count());
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) s[g.index(i, j)] = g.x(i) * g.x(i);
    const auto grad = gradient(ScalarField2(g, s));
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 1; i + 1 < g.nx(); ++i) CHECK(std::abs(grad.u()[g.index(i, j)] - 2 * g.x(i)) < 1e-3);
}

TEST_CASE("gradient ensemble composes magnitude and gradient per member") {
    const UniformGrid2 g(12, 10, 0.5, 0.5);
    const auto members = random_members(g, 4, 0.0, 1.0, 8);
    const auto out = gradient_ensemble(Ensemble2(g, members));
    REQUIRE(out.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(out[k] == gradient(velocity_magnitude(members[k])));

    const auto same = gradient_ensemble(Ensemble2(g, {members[0], members[0], members[0]}));
    CHECK(same[0] == same[1]);
    CHECK(same[1] == same[2]);
}

TEST_CASE("gradient of a vortex magnitude points outward inside the ridge") {
    const std::size_t n = 81;
    const double h = 0.05, c = 2.0;
    const UniformGrid2 g(n, n, h, h);
    std::mt19937_64 rng(21);
    std::normal_distribution<double> noise(0.0, 1e-3);
    std::vector<VectorField2> members;
    for (int m = 0; m < 6; ++m) {
        std::vector<double> u(g.vertex_count()), v(g.vertex_count());
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                const double x = g.x(i) - c, y = g.y(j) - c;
                const double w = std::exp(-(x * x + y * y));
                u[g.index(i, j)] = -y * w + noise(rng);
                v[g.index(i, j)] = x * w + noise(rng);
            }
        }
        members.emplace_back(g, std::move(u), std::move(v));
    }
    const auto grads = gradient_ensemble(Ensemble2(g, members));
    const auto model = fit_gaussian(grads);

    std::size_t outward = 0, inside = 0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double x = g.x(i) - c, y = g.y(j) - c;
            const double r = std::hypot(x, y);
            if (r < 0.2 || r > 0.5) continue;
            ++inside;
            const std::size_t k = g.index(i, j);
            outward += (model.mu_u()[k] * x + model.mu_v()[k] * y) > 0;
        }
    }
    CHECK(inside > 0);
    CHECK(outward == inside);

    // Direct five-point Laplacian of the noise-free magnitude at the centre.
    auto mag = [](double x, double y) { return std::hypot(x, y) * std::exp(-(x * x + y * y)); };
    const double lap = (mag(h, 0) + mag(-h, 0) + mag(0, h) + mag(0, -h) - 4 * mag(0, 0)) / (h * h);
    const std::size_t centre = g.index(40, 40);
    const double div = propagate_divergence(model).mu()[centre];
    CHECK(lap > 0);
    CHECK(div > 0);
}

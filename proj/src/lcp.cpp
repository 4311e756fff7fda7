#include "divuq/lcp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace divuq {

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

SideProbabilities side_probabilities(double mu, double sigma, double iso) noexcept {
    if (sigma == 0.0) {
        return mu <= iso ? SideProbabilities{1.0, 0.0} : SideProbabilities{0.0, 1.0};
    }
    const double z = (iso - mu) / sigma;
    return {0.5 * std::erfc(-z / std::numbers::sqrt2), 0.5 * std::erfc(z / std::numbers::sqrt2)};
}

double cell_crossing_probability(const std::array<NormalParams, 4>& vertices, double iso) noexcept {
    double all_below = 1.0;
    double all_above = 1.0;
    for (const auto& v : vertices) {
        const auto p = side_probabilities(v.mu, v.sigma, iso);
        all_below *= p.below;
        all_above *= p.above;
    }
    // The sum is commutative in IEEE arithmetic, so negating means and
    // isovalue gives the identical result.
    return std::clamp(1.0 - (all_below + all_above), 0.0, 1.0);
}

LcpField::LcpField(UniformGrid2 grid, double isovalue, std::vector<double> probabilities)
    : grid_(grid), isovalue_(isovalue), probabilities_(std::move(probabilities)) {
    ensure(probabilities_.size() == grid_.cell_count(), ErrorKind::Shape,
           "LcpField needs one probability per cell");
    for (double p : probabilities_) {
        ensure(p >= 0.0 && p <= 1.0, ErrorKind::Data, "LcpField probability outside [0, 1]");
    }
}

LcpField lcp(const GaussianScalarField& field, double isovalue, const ParallelConfig& config) {
    const auto& grid = field.grid();
    const std::size_t cw = grid.nx() - 1;
    const auto mu = field.mu();
    const auto sigma = field.sigma();

    auto probabilities = parallel_map(
        grid.cell_count(),
        [&](std::size_t c) {
            const std::size_t i = c % cw;
            const std::size_t j = c / cw;
            const std::size_t k[4] = {grid.index(i, j), grid.index(i + 1, j),
                                      grid.index(i + 1, j + 1), grid.index(i, j + 1)};
            return cell_crossing_probability({NormalParams{mu[k[0]], sigma[k[0]]},
                                              NormalParams{mu[k[1]], sigma[k[1]]},
                                              NormalParams{mu[k[2]], sigma[k[2]]},
                                              NormalParams{mu[k[3]], sigma[k[3]]}},
                                             isovalue);
        },
        config);
    return LcpField(grid, isovalue, std::move(probabilities));
}

}  // namespace divuq

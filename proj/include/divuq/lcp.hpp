// Level-crossing probability of an isovalue per grid cell for independent
// Gaussian vertex values.
#pragma once

#include <array>
#include <span>
#include <vector>

#include "divuq/divergence.hpp"
#include "divuq/parallel.hpp"

namespace divuq {

/// Standard normal CDF via erfc, accurate in both tails.
double normal_cdf(double z) noexcept;

/// P(X <= iso) and P(X > iso) for X ~ N(mu, sigma^2). With sigma == 0 the
/// vertex is a step: mu <= iso counts as below.
struct SideProbabilities {
    double below;
    double above;
};
SideProbabilities side_probabilities(double mu, double sigma, double iso) noexcept;

/// 1 - P(all four below) - P(all four above), clamped to [0, 1].
double cell_crossing_probability(const std::array<NormalParams, 4>& vertices, double iso) noexcept;

class LcpField {
public:
    LcpField(UniformGrid2 grid, double isovalue, std::vector<double> probabilities);

    const UniformGrid2& grid() const noexcept { return grid_; }
    double isovalue() const noexcept { return isovalue_; }
    std::size_t width() const noexcept { return grid_.nx() - 1; }
    std::size_t height() const noexcept { return grid_.ny() - 1; }
    /// Cell (i, j) is at j * (nx - 1) + i.
    std::span<const double> probabilities() const noexcept { return probabilities_; }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return probabilities_[j * width() + i];
    }

    bool operator==(const LcpField&) const = default;

private:
    UniformGrid2 grid_;
    double isovalue_;
    std::vector<double> probabilities_;
};

/// Cell vertices are taken counter-clockwise from the lower-left corner:
/// (i, j), (i+1, j), (i+1, j+1), (i, j+1).
LcpField lcp(const GaussianScalarField& field, double isovalue, const ParallelConfig& config = {});

}  // namespace divuq

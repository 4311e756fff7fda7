// Monte Carlo estimate of the divergence distribution: the sampling oracle for
// propagate_divergence and the baseline it is timed against.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "divuq/divergence.hpp"
#include "divuq/gaussian_fit.hpp"
#include "divuq/parallel.hpp"

namespace divuq {

struct McConfig {
    std::size_t n_samples = 1000;
    std::uint64_t seed = 0;
};

struct McDivergenceEstimate {
    UniformGrid2 grid;
    std::vector<double> mean;
    std::vector<double> std;  // Bessel-corrected
    std::size_t n_samples;
};

struct McHistogram {
    std::vector<double> bin_edges;
    std::vector<std::size_t> counts;
    std::size_t n_samples;
};

struct McMoments {
    double mean;
    double std;
    std::size_t n_samples;
};

struct ErrorMetrics {
    double e_m;      // mean |empirical mean - mu|
    double e_sigma;  // mean |empirical std - sigma|
    double sse;      // sum of both squared errors over vertices
};

/// Draws every vertex component from its Gaussian for each sample, takes the
/// finite-difference divergence and accumulates per-vertex mean and variance in
/// one pass. The draw for (vertex, component, sample) depends only on the seed,
/// so any parallel split reproduces the serial result exactly. Throws
/// ErrorKind::Config for fewer than two samples.
McDivergenceEstimate mc_divergence(const GaussianVectorField& model, const McConfig& config,
                                   const ParallelConfig& parallel = {});

/// Samples the single-vertex divergence of four independent neighbours.
std::vector<double> mc_single_vertex_samples(const DivergenceNeighbors& neighbors, double dx,
                                             double dy, const McConfig& config);

/// One-pass (Welford) mean and Bessel-corrected std.
McMoments moments_of(const std::vector<double>& samples);

McMoments mc_single_vertex(const DivergenceNeighbors& neighbors, double dx, double dy,
                           const McConfig& config);

/// Uniform bins over [min, max] of the drawn values. When every draw is equal
/// the result is a single unit-width bin centred on that value.
McHistogram mc_histogram_1d(const DivergenceNeighbors& neighbors, double dx, double dy,
                            const McConfig& config, std::size_t n_bins);

McHistogram histogram_of(const std::vector<double>& samples, std::size_t n_bins);

ErrorMetrics error_metrics(const McDivergenceEstimate& estimate, const GaussianScalarField& analytic);

}  // namespace divuq

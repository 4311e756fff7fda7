#include "divuq/mc_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "divuq/random.hpp"

namespace divuq {

namespace {

constexpr std::uint32_t kComponentU = 0;
constexpr std::uint32_t kComponentV = 1;

struct Welford {
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x, std::size_t k) noexcept {
        const double delta = x - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (x - mean);
    }
};

constexpr std::size_t kRowBlock = 16;

// Two consecutive samples of `count` contiguous vertices for one component.
void draw_rows(const NormalStream& stream, std::uint64_t pair, std::size_t offset,
               std::size_t count, std::uint32_t component, std::span<const double> mu,
               std::span<const double> sigma, std::vector<double>& first,
               std::vector<double>& second) {
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = offset + i;
        if (sigma[k] == 0.0) {
            first[i] = second[i] = mu[k];
            continue;
        }
        const auto [z0, z1] = stream.pair(pair, static_cast<std::uint32_t>(k), component);
        first[i] = mu[k] + sigma[k] * z0;
        second[i] = mu[k] + sigma[k] * z1;
    }
}

}  // namespace

McDivergenceEstimate mc_divergence(const GaussianVectorField& model, const McConfig& config,
                                   const ParallelConfig& parallel) {
    ensure(config.n_samples >= 2, ErrorKind::Config, "mc_divergence needs n_samples >= 2");
    const auto& grid = model.grid();
    const std::size_t nx = grid.nx();
    const std::size_t ny = grid.ny();
    const std::size_t n = config.n_samples;
    const NormalStream stream(config.seed, StreamDomain::McDivergence);

    std::vector<double> mean(grid.vertex_count());
    std::vector<double> std_dev(grid.vertex_count());

    // Rows are processed in blocks so that each v row is drawn once per block
    // plus a one-row halo, instead of once for every row that reads it.
    const std::size_t n_blocks = (ny + kRowBlock - 1) / kRowBlock;
    parallel_for(n_blocks, parallel, [&](std::size_t block_begin, std::size_t block_end) {
        for (std::size_t block = block_begin; block < block_end; ++block) {
            const std::size_t j0 = block * kRowBlock;
            const std::size_t j1 = std::min(ny, j0 + kRowBlock);
            const std::size_t rows = j1 - j0;
            const std::size_t v_lo = j0 == 0 ? 0 : j0 - 1;
            const std::size_t v_hi = j1 == ny ? ny - 1 : j1;  // inclusive
            const std::size_t v_rows = v_hi - v_lo + 1;

            std::vector<double> u0(rows * nx), u1(rows * nx), v0(v_rows * nx), v1(v_rows * nx);
            std::vector<Welford> acc(rows * nx);
            std::vector<Stencil> stencils(rows * nx);
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t i = 0; i < nx; ++i) stencils[r * nx + i] = stencil_at(grid, i, j0 + r);
            }
            // Stencil indices are global; shift them into the block buffers.
            const std::size_t u_base = j0 * nx;
            const std::size_t v_base = v_lo * nx;

            auto accumulate = [&](const std::vector<double>& u, const std::vector<double>& v,
                                  std::size_t count) {
                for (std::size_t k = 0; k < rows * nx; ++k) {
                    const Stencil& s = stencils[k];
                    const double d = stencil_divergence(u[s.x_plus - u_base], u[s.x_minus - u_base],
                                                        v[s.y_plus - v_base], v[s.y_minus - v_base], s);
                    acc[k].add(d, count);
                }
            };

            for (std::uint64_t pair = 0; 2 * pair < n; ++pair) {
                draw_rows(stream, pair, u_base, rows * nx, kComponentU, model.mu_u(), model.sigma_u(),
                          u0, u1);
                draw_rows(stream, pair, v_base, v_rows * nx, kComponentV, model.mu_v(),
                          model.sigma_v(), v0, v1);
                accumulate(u0, v0, 2 * pair + 1);
                if (2 * pair + 1 < n) accumulate(u1, v1, 2 * pair + 2);
            }

            for (std::size_t k = 0; k < rows * nx; ++k) {
                mean[u_base + k] = acc[k].mean;
                std_dev[u_base + k] = std::sqrt(std::max(acc[k].m2, 0.0) / static_cast<double>(n - 1));
            }
        }
    });

    return McDivergenceEstimate{grid, std::move(mean), std::move(std_dev), n};
}

std::vector<double> mc_single_vertex_samples(const DivergenceNeighbors& nb, double dx, double dy,
                                             const McConfig& config) {
    ensure(config.n_samples >= 1, ErrorKind::Config, "n_samples must be >= 1");
    ensure(dx > 0.0 && dy > 0.0, ErrorKind::Data, "grid spacing must be positive");
    for (const auto* p : {&nb.u_minus, &nb.u_plus, &nb.v_minus, &nb.v_plus}) {
        ensure(p->sigma >= 0.0, ErrorKind::Data, "neighbour sigma must be non-negative");
    }

    const NormalStream stream(config.seed, StreamDomain::McSingleVertex);
    const Stencil s{1, 0, 2.0 * dx, 3, 2, 2.0 * dy};
    const NormalParams* sites[4] = {&nb.u_minus, &nb.u_plus, &nb.v_minus, &nb.v_plus};

    std::vector<double> samples(config.n_samples);
    for (std::uint64_t pair = 0; 2 * pair < config.n_samples; ++pair) {
        double first[4], second[4];
        for (std::uint32_t site = 0; site < 4; ++site) {
            const auto [z0, z1] = stream.pair(pair, site, 0);
            first[site] = sites[site]->mu + sites[site]->sigma * z0;
            second[site] = sites[site]->mu + sites[site]->sigma * z1;
        }
        samples[2 * pair] = stencil_divergence(first[1], first[0], first[3], first[2], s);
        if (2 * pair + 1 < config.n_samples) {
            samples[2 * pair + 1] = stencil_divergence(second[1], second[0], second[3], second[2], s);
        }
    }
    return samples;
}

McMoments moments_of(const std::vector<double>& samples) {
    ensure(samples.size() >= 2, ErrorKind::Config, "moments need at least 2 samples");
    Welford acc;
    for (std::size_t k = 0; k < samples.size(); ++k) acc.add(samples[k], k + 1);
    return {acc.mean, std::sqrt(std::max(acc.m2, 0.0) / static_cast<double>(samples.size() - 1)),
            samples.size()};
}

McMoments mc_single_vertex(const DivergenceNeighbors& neighbors, double dx, double dy,
                           const McConfig& config) {
    ensure(config.n_samples >= 2, ErrorKind::Config, "mc_single_vertex needs n_samples >= 2");
    return moments_of(mc_single_vertex_samples(neighbors, dx, dy, config));
}

McHistogram histogram_of(const std::vector<double>& samples, std::size_t n_bins) {
    ensure(n_bins >= 1, ErrorKind::Config, "histogram needs n_bins >= 1");
    ensure(!samples.empty(), ErrorKind::Config, "histogram needs at least one sample");
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it;
    const double hi = *hi_it;

    McHistogram h;
    h.n_samples = samples.size();
    if (lo == hi) {
        h.bin_edges = {lo - 0.5, lo + 0.5};
        h.counts = {samples.size()};
        return h;
    }

    const double width = hi - lo;
    h.bin_edges.resize(n_bins + 1);
    for (std::size_t b = 0; b < n_bins; ++b) {
        h.bin_edges[b] = lo + width * static_cast<double>(b) / static_cast<double>(n_bins);
    }
    h.bin_edges[n_bins] = hi;
    h.counts.assign(n_bins, 0);
    for (double x : samples) {
        auto b = static_cast<std::size_t>((x - lo) / width * static_cast<double>(n_bins));
        h.counts[std::min(b, n_bins - 1)] += 1;
    }
    return h;
}

McHistogram mc_histogram_1d(const DivergenceNeighbors& neighbors, double dx, double dy,
                            const McConfig& config, std::size_t n_bins) {
    ensure(n_bins >= 1, ErrorKind::Config, "histogram needs n_bins >= 1");
    return histogram_of(mc_single_vertex_samples(neighbors, dx, dy, config), n_bins);
}

ErrorMetrics error_metrics(const McDivergenceEstimate& estimate, const GaussianScalarField& analytic) {
    ensure(estimate.grid == analytic.grid() && estimate.mean.size() == analytic.mu().size() &&
               estimate.std.size() == analytic.sigma().size(),
           ErrorKind::Shape, "error_metrics: estimate and analytic field have different grids");
    const std::size_t n = estimate.mean.size();
    ErrorMetrics m{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const double dm = estimate.mean[k] - analytic.mu()[k];
        const double ds = estimate.std[k] - analytic.sigma()[k];
        m.e_m += std::abs(dm);
        m.e_sigma += std::abs(ds);
        m.sse += dm * dm + ds * ds;
    }
    m.e_m /= static_cast<double>(n);
    m.e_sigma /= static_cast<double>(n);
    return m;
}

}  // namespace divuq

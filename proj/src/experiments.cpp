#include "divuq/experiments.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "divuq/io.hpp"
#include "divuq/lcp.hpp"

namespace divuq {

Validate1dResult validate_1d(const DivergenceNeighbors& neighbors, double dx, double dy,
                             const McConfig& config, std::size_t n_bins) {
    ensure(config.n_samples >= 2, ErrorKind::Config, "validate-1d needs at least 2 samples");
    const NormalParams analytic = propagate_single(neighbors, dx, dy);
    const auto samples = mc_single_vertex_samples(neighbors, dx, dy, config);
    const McMoments mc = moments_of(samples);
    return {analytic, mc, histogram_of(samples, n_bins), std::abs(mc.mean - analytic.mu),
            std::abs(mc.std - analytic.sigma)};
}

std::string validate_1d_csv(const Validate1dResult& r) {
    std::string out = "bin_lo,bin_hi,count,mc_density,analytic_pdf,analytic_mass\n";
    const auto& h = r.histogram;
    const double mu = r.analytic.mu;
    const double sigma = r.analytic.sigma;
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        const double lo = h.bin_edges[b];
        const double hi = h.bin_edges[b + 1];
        const double density =
            static_cast<double>(h.counts[b]) / (static_cast<double>(h.n_samples) * (hi - lo));
        double pdf = 0.0;
        double mass = 0.0;
        if (sigma > 0.0) {
            const double z = (0.5 * (lo + hi) - mu) / sigma;
            pdf = std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
            mass = normal_cdf((hi - mu) / sigma) - normal_cdf((lo - mu) / sigma);
        } else {
            mass = (mu >= lo && mu < hi) ? 1.0 : 0.0;
        }
        out += format_double(lo) + "," + format_double(hi) + "," + std::to_string(h.counts[b]) + "," +
               format_double(density) + "," + format_double(pdf) + "," + format_double(mass) + "\n";
    }
    return out;
}

std::string validate_1d_summary_csv(const Validate1dResult& r) {
    return "analytic_mean,analytic_std,mc_mean,mc_std,e_m,e_sigma,samples\n" +
           format_double(r.analytic.mu) + "," + format_double(r.analytic.sigma) + "," +
           format_double(r.mc.mean) + "," + format_double(r.mc.std) + "," + format_double(r.e_m) +
           "," + format_double(r.e_sigma) + "," + std::to_string(r.mc.n_samples) + "\n";
}

std::vector<BenchRow> run_benchmark(const GaussianVectorField& model,
                                    const std::vector<std::size_t>& samples_list,
                                    const std::vector<std::size_t>& threads_list, int runs,
                                    std::uint64_t seed) {
    ensure(!threads_list.empty(), ErrorKind::Usage, "bench needs at least one thread count");
    std::vector<BenchRow> rows;
    std::map<std::size_t, double> analytic_time;
    GaussianScalarField analytic = propagate_divergence(model, ParallelConfig::serial());

    for (std::size_t t : threads_list) {
        const ParallelConfig cfg = ParallelConfig::with_threads(t);
        BenchReport r = bench("analytic/t=" + std::to_string(t), runs,
                              [&] { analytic = propagate_divergence(model, cfg); });
        analytic_time[t] = r.mean_seconds;
        rows.push_back({r, "analytic", t, 0, 0.0, 1.0});
    }

    for (std::size_t n : samples_list) {
        const McConfig mc{n, seed};
        const double sse = error_metrics(mc_divergence(model, mc), analytic).sse;
        for (std::size_t t : threads_list) {
            const ParallelConfig cfg = ParallelConfig::with_threads(t);
            BenchReport r = bench("mc/n=" + std::to_string(n) + "/t=" + std::to_string(t), runs,
                                  [&] { (void)mc_divergence(model, mc, cfg); });
            const double speedup = r.mean_seconds / analytic_time[t];
            rows.push_back({r, "mc", t, n, sse, speedup});
        }
    }
    return rows;
}

std::string benchmark_csv(const std::vector<BenchRow>& rows) {
    std::string out = bench_csv_header() + ",method,threads,samples,sse,analytic_speedup\n";
    for (const auto& row : rows) {
        out += bench_csv_row(row.report) + "," + row.method + "," + std::to_string(row.threads) + "," +
               std::to_string(row.samples) + "," + format_double(row.sse) + "," +
               format_double(row.analytic_speedup) + "\n";
    }
    return out;
}

}  // namespace divuq

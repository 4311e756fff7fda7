// End-to-end experiments driven by the CLI: the single-vertex sampling check
// against the closed form, and the analytic-vs-sampling timing table.
#pragma once

#include <string>
#include <vector>

#include "divuq/divergence.hpp"
#include "divuq/mc_oracle.hpp"
#include "divuq/parallel.hpp"

namespace divuq {

struct Validate1dResult {
    NormalParams analytic;
    McMoments mc;
    McHistogram histogram;
    double e_m;
    double e_sigma;
};

Validate1dResult validate_1d(const DivergenceNeighbors& neighbors, double dx, double dy,
                             const McConfig& config, std::size_t n_bins);

/// Columns: bin_lo,bin_hi,count,mc_density,analytic_pdf,analytic_mass
std::string validate_1d_csv(const Validate1dResult& result);

/// Columns: analytic_mean,analytic_std,mc_mean,mc_std,e_m,e_sigma,samples
std::string validate_1d_summary_csv(const Validate1dResult& result);

struct BenchRow {
    BenchReport report;
    std::string method;   // "analytic" or "mc"
    std::size_t threads;
    std::size_t samples;  // 0 for analytic rows
    double sse;           // MC vs analytic; 0 for analytic rows
    double analytic_speedup;  // this row's mean time / analytic mean time at the same thread count
};

/// Times analytic propagation for each thread count, then MC for every
/// (samples, threads) pair. Every measurement is averaged over `runs`.
std::vector<BenchRow> run_benchmark(const GaussianVectorField& model,
                                    const std::vector<std::size_t>& samples_list,
                                    const std::vector<std::size_t>& threads_list, int runs,
                                    std::uint64_t seed);

/// Columns: label,runs,mean_s,min_s,max_s,method,threads,samples,sse,analytic_speedup
std::string benchmark_csv(const std::vector<BenchRow>& rows);

}  // namespace divuq

// Deterministic data-parallel map and the timing harness.
//
// Work is split into contiguous index chunks; chunk c runs on worker
// c % threads. Kernels must be pure per index, so the output never depends on
// the thread count or the chunk size.
#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace divuq {

struct ParallelConfig {
    std::optional<std::size_t> threads;  // nullopt = hardware concurrency
    std::optional<std::size_t> chunk;    // nullopt = one chunk per thread

    static ParallelConfig serial() { return ParallelConfig{1, std::nullopt}; }
    static ParallelConfig with_threads(std::size_t n) { return ParallelConfig{n, std::nullopt}; }

    std::size_t resolved_threads() const;
    std::size_t resolved_chunk(std::size_t n) const;
};

/// Parses "auto" or a positive integer. Throws ErrorKind::Usage otherwise.
std::optional<std::size_t> parse_count_or_auto(const std::string& text);

/// Runs body(begin, end) over [0, n) in static contiguous chunks. If any chunk
/// throws, the exception from the lowest-indexed failing chunk is rethrown
/// after all workers have joined.
template <class Body>
void parallel_for(std::size_t n, const ParallelConfig& config, Body&& body) {
    if (n == 0) return;
    const std::size_t chunk = config.resolved_chunk(n);
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    const std::size_t threads = std::min(config.resolved_threads(), n_chunks);

    std::vector<std::exception_ptr> errors(n_chunks);
    auto worker = [&](std::size_t t) {
        for (std::size_t c = t; c < n_chunks; c += threads) {
            const std::size_t begin = c * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            try {
                body(begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
                return;
            }
        }
    };

    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads - 1);
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker, t);
        worker(0);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// output[i] = kernel(i) for i in [0, n).
template <class Kernel>
auto parallel_map(std::size_t n, Kernel&& kernel, const ParallelConfig& config = {})
    -> std::vector<std::invoke_result_t<Kernel&, std::size_t>> {
    using T = std::invoke_result_t<Kernel&, std::size_t>;
    std::vector<T> out(n);
    parallel_for(n, config, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = kernel(i);
    });
    return out;
}

struct BenchReport {
    std::string label;
    int runs = 0;
    double mean_seconds = 0.0;
    double min_seconds = 0.0;
    double max_seconds = 0.0;
};

/// One untimed warm-up call, then `runs` timed calls on a monotonic clock.
BenchReport bench(std::string label, int runs, const std::function<void()>& thunk);

std::string bench_csv_header();
std::string bench_csv_row(const BenchReport& report);

}  // namespace divuq

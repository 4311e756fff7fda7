#include "divuq/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <limits>

#include "divuq/error.hpp"
#include "divuq/io.hpp"

namespace divuq {

std::size_t ParallelConfig::resolved_threads() const {
    if (threads) return std::max<std::size_t>(1, *threads);
    return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t ParallelConfig::resolved_chunk(std::size_t n) const {
    if (chunk) return std::max<std::size_t>(1, *chunk);
    const std::size_t t = resolved_threads();
    return std::max<std::size_t>(1, (n + t - 1) / t);
}

std::optional<std::size_t> parse_count_or_auto(const std::string& text) {
    if (text == "auto") return std::nullopt;
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        throw Error(ErrorKind::Usage, "expected 'auto' or a positive integer, got '" + text + "'");
    }
    return value;
}

BenchReport bench(std::string label, int runs, const std::function<void()>& thunk) {
    ensure(runs >= 1, ErrorKind::Config, "bench needs runs >= 1");
    using clock = std::chrono::steady_clock;

    thunk();

    BenchReport report;
    report.label = std::move(label);
    report.runs = runs;
    report.min_seconds = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (int r = 0; r < runs; ++r) {
        const auto start = clock::now();
        thunk();
        const auto stop = clock::now();
        const double seconds = std::chrono::duration<double>(stop - start).count();
        total += seconds;
        report.min_seconds = std::min(report.min_seconds, seconds);
        report.max_seconds = std::max(report.max_seconds, seconds);
    }
    report.mean_seconds = std::clamp(total / runs, report.min_seconds, report.max_seconds);
    return report;
}

std::string bench_csv_header() { return "label,runs,mean_s,min_s,max_s"; }

std::string bench_csv_row(const BenchReport& report) {
    return csv_escape(report.label) + "," + std::to_string(report.runs) + "," +
           format_double(report.mean_seconds) + "," + format_double(report.min_seconds) + "," +
           format_double(report.max_seconds);
}

}  // namespace divuq

#include <doctest.h>

#include <cmath>
#include <set>

#include "divuq/random.hpp"
#include "oracles.hpp"

using namespace divuq;

TEST_CASE("philox4x32-10 known-answer vectors") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("draws are pure functions of their coordinates") {
    const NormalStream a(42, StreamDomain::McDivergence), b(42, StreamDomain::McDivergence);
    CHECK(a.draw(17, 3, 1) == b.draw(17, 3, 1));
    CHECK(a.draw(16, 3, 1) == a.pair(8, 3, 1).first);
    CHECK(a.draw(17, 3, 1) == a.pair(8, 3, 1).second);

    std::set<double> distinct;
    distinct.insert(a.draw(0, 0, 0));
    distinct.insert(a.draw(0, 0, 1));
    distinct.insert(a.draw(0, 1, 0));
    distinct.insert(a.draw(1, 0, 0));
    distinct.insert(NormalStream(43, StreamDomain::McDivergence).draw(0, 0, 0));
    distinct.insert(NormalStream(42, StreamDomain::SyntheticNoise).draw(0, 0, 0));
    CHECK(distinct.size() == 6);
}

TEST_CASE("draws are standard normal") {
    const NormalStream s(7, StreamDomain::McSingleVertex);
    const std::size_t n = 400000;
    std::vector<double> xs(n);
    std::size_t within1 = 0;
    for (std::size_t k = 0; k < n; ++k) {
        xs[k] = s.draw(k, 5, 0);
        CHECK_FALSE(std::isnan(xs[k]));
        within1 += std::abs(xs[k]) <= 1.0;
    }
    const auto [mean, sd] = oracle::sample_stats(xs);
    CHECK(std::abs(mean) < 6.0 / std::sqrt(double(n)));
    CHECK(std::abs(sd - 1.0) < 6.0 / std::sqrt(2.0 * n));
    const double p = 0.6826894921370859;
    CHECK(std::abs(within1 / double(n) - p) < 6 * std::sqrt(p * (1 - p) / n));

    double lag = 0;
    for (std::size_t k = 1; k < n; ++k) lag += xs[k] * xs[k - 1];
    CHECK(std::abs(lag / (n - 1)) < 6.0 / std::sqrt(double(n)));
}

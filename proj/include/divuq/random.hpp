// Counter-based normal deviates.
//
// Philox4x32-10 maps (counter, key) to 128 random bits with no state, so any
// draw can be regenerated from its coordinates alone. One counter yields two
// uniforms and, through Box-Muller, two standard normals.
#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace divuq {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Independent stream families sharing one seed.
enum class StreamDomain : std::uint32_t {
    McDivergence = 1,
    McSingleVertex = 2,
    SyntheticNoise = 3,
};

class NormalStream {
public:
    NormalStream(std::uint64_t seed, StreamDomain domain) noexcept;

    /// The two deviates for samples 2 * pair and 2 * pair + 1 at (site, component).
    std::pair<double, double> pair(std::uint64_t pair_index, std::uint32_t site,
                                   std::uint32_t component) const noexcept;

    double draw(std::uint64_t sample, std::uint32_t site, std::uint32_t component) const noexcept {
        const auto [z0, z1] = pair(sample >> 1, site, component);
        return (sample & 1u) ? z1 : z0;
    }

private:
    PhiloxKey key_;
    std::uint32_t domain_;
};

}  // namespace divuq

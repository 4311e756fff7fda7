// Seeded synthetic ensembles standing in for measured or simulated flows.
#pragma once

#include <cstdint>
#include <string_view>

#include "divuq/grid.hpp"

namespace divuq {

enum class SyntheticKind {
    SourceSink,  // Gaussian-windowed source on the left, sink on the right
    Vortex,      // Gaussian-windowed rigid rotation about the centre
    WindLike,    // two sinks, a source, a vortex and a uniform drift
};

/// "source-sink", "vortex" or "wind-like"; anything else is ErrorKind::Usage.
SyntheticKind parse_synthetic_kind(std::string_view name);

/// Noise-free base field of the given kind.
VectorField2 synthetic_base(SyntheticKind kind, const UniformGrid2& grid);

/// Each member is the base plus i.i.d. N(0, noise_sigma^2) per vertex and
/// component, drawn from the counter stream keyed by (seed, vertex, component,
/// member).
Ensemble2 generate_synthetic(SyntheticKind kind, const UniformGrid2& grid, std::size_t n_members,
                             double noise_sigma, std::uint64_t seed);

}  // namespace divuq

#include "divuq/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "divuq/random.hpp"

namespace divuq {

namespace {

struct Feature {
    enum class Type { Radial, Swirl } type;
    double cx;  // fraction of domain width
    double cy;  // fraction of domain height
    double amplitude;
};

// Radial feature A (p - c) g(r) has divergence A g(r) (2 - r^2 / w^2); swirl
// A (-(y - cy), x - cx) g(r) is divergence free.
void add_feature(const Feature& f, const UniformGrid2& grid, std::vector<double>& u,
                 std::vector<double>& v) {
    const double w = 0.12 * std::min(grid.width(), grid.height());
    const double cx = f.cx * grid.width();
    const double cy = f.cy * grid.height();
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double rx = grid.x(i) - cx;
            const double ry = grid.y(j) - cy;
            const double g = f.amplitude * std::exp(-(rx * rx + ry * ry) / (2.0 * w * w));
            const std::size_t k = grid.index(i, j);
            if (f.type == Feature::Type::Radial) {
                u[k] += rx * g;
                v[k] += ry * g;
            } else {
                u[k] += -ry * g;
                v[k] += rx * g;
            }
        }
    }
}

}  // namespace

SyntheticKind parse_synthetic_kind(std::string_view name) {
    if (name == "source-sink") return SyntheticKind::SourceSink;
    if (name == "vortex") return SyntheticKind::Vortex;
    if (name == "wind-like") return SyntheticKind::WindLike;
    throw Error(ErrorKind::Usage,
                "unknown synthetic kind '" + std::string(name) + "' (source-sink, vortex, wind-like)");
}

VectorField2 synthetic_base(SyntheticKind kind, const UniformGrid2& grid) {
    std::vector<double> u(grid.vertex_count(), 0.0);
    std::vector<double> v(grid.vertex_count(), 0.0);
    using T = Feature::Type;
    switch (kind) {
        case SyntheticKind::SourceSink:
            add_feature({T::Radial, 0.3, 0.5, 2.0}, grid, u, v);
            add_feature({T::Radial, 0.7, 0.5, -2.0}, grid, u, v);
            break;
        case SyntheticKind::Vortex:
            add_feature({T::Swirl, 0.5, 0.5, 1.0}, grid, u, v);
            break;
        case SyntheticKind::WindLike:
            add_feature({T::Radial, 0.25, 0.35, -2.5}, grid, u, v);
            add_feature({T::Radial, 0.65, 0.72, -1.6}, grid, u, v);
            add_feature({T::Radial, 0.72, 0.28, 1.8}, grid, u, v);
            add_feature({T::Swirl, 0.42, 0.66, 0.8}, grid, u, v);
            for (std::size_t k = 0; k < u.size(); ++k) {
                u[k] += 0.5;
                v[k] += 0.2;
            }
            break;
    }
    return VectorField2(grid, std::move(u), std::move(v));
}

Ensemble2 generate_synthetic(SyntheticKind kind, const UniformGrid2& grid, std::size_t n_members,
                             double noise_sigma, std::uint64_t seed) {
    ensure(n_members >= 2, ErrorKind::InsufficientEnsemble, "generate_synthetic needs n_members >= 2");
    ensure(std::isfinite(noise_sigma) && noise_sigma >= 0.0, ErrorKind::Data,
           "noise sigma must be finite and non-negative");

    const VectorField2 base = synthetic_base(kind, grid);
    const NormalStream stream(seed, StreamDomain::SyntheticNoise);
    std::vector<VectorField2> members;
    members.reserve(n_members);
    for (std::size_t m = 0; m < n_members; ++m) {
        std::vector<double> u(base.u().begin(), base.u().end());
        std::vector<double> v(base.v().begin(), base.v().end());
        if (noise_sigma > 0.0) {
            for (std::size_t k = 0; k < u.size(); ++k) {
                const auto site = static_cast<std::uint32_t>(k);
                u[k] += noise_sigma * stream.draw(m, site, 0);
                v[k] += noise_sigma * stream.draw(m, site, 1);
            }
        }
        members.emplace_back(grid, std::move(u), std::move(v));
    }
    return Ensemble2(grid, std::move(members));
}

}  // namespace divuq

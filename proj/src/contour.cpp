#include "divuq/contour.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace divuq {

namespace {

constexpr double kTieEpsilon = 1e-12;
constexpr std::int64_t kNone = -1;

struct Segment {
    std::size_t edge_a;
    std::size_t edge_b;
};

// Edge keys: 2 * vertex for the horizontal edge leaving (i, j) in +x,
// 2 * vertex + 1 for the vertical edge leaving (i, j) in +y.
std::size_t horizontal_edge(const UniformGrid2& g, std::size_t i, std::size_t j) {
    return 2 * g.index(i, j);
}
std::size_t vertical_edge(const UniformGrid2& g, std::size_t i, std::size_t j) {
    return 2 * g.index(i, j) + 1;
}

}  // namespace

ContourSet marching_squares(const ScalarField2& field, double isovalue) {
    const auto& grid = field.grid();
    const std::size_t nx = grid.nx();
    const std::size_t ny = grid.ny();

    std::vector<double> value(field.values().begin(), field.values().end());
    for (double& v : value) {
        if (v == isovalue) v += kTieEpsilon * std::abs(isovalue + 1.0);
    }
    auto above = [&](std::size_t k) { return value[k] > isovalue; };

    auto edge_point = [&](std::size_t edge) {
        const std::size_t k = edge / 2;
        const std::size_t i = k % nx;
        const std::size_t j = k / nx;
        const bool vertical = edge % 2 == 1;
        const std::size_t k2 = vertical ? grid.index(i, j + 1) : grid.index(i + 1, j);
        const double t = (isovalue - value[k]) / (value[k2] - value[k]);
        if (vertical) return Point2{grid.x(i), grid.y(j) + t * grid.dy()};
        return Point2{grid.x(i) + t * grid.dx(), grid.y(j)};
    };

    std::vector<Segment> segments;
    for (std::size_t j = 0; j + 1 < ny; ++j) {
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            const std::size_t bl = grid.index(i, j);
            const std::size_t br = grid.index(i + 1, j);
            const std::size_t tr = grid.index(i + 1, j + 1);
            const std::size_t tl = grid.index(i, j + 1);
            const unsigned code = (above(bl) ? 1u : 0u) | (above(br) ? 2u : 0u) |
                                  (above(tr) ? 4u : 0u) | (above(tl) ? 8u : 0u);
            if (code == 0 || code == 15) continue;

            const std::size_t bottom = horizontal_edge(grid, i, j);
            const std::size_t right = vertical_edge(grid, i + 1, j);
            const std::size_t top = horizontal_edge(grid, i, j + 1);
            const std::size_t left = vertical_edge(grid, i, j);

            if (code == 5 || code == 10) {
                const double centre = 0.25 * (value[bl] + value[br] + value[tr] + value[tl]);
                const bool centre_above = centre > isovalue;
                // Separate the corners that do not share the centre's side.
                const bool split_br_tl = (code == 5) == centre_above;
                if (split_br_tl) {
                    segments.push_back({bottom, right});
                    segments.push_back({left, top});
                } else {
                    segments.push_back({left, bottom});
                    segments.push_back({right, top});
                }
                continue;
            }

            std::array<std::size_t, 2> crossing{};
            std::size_t n = 0;
            if (above(bl) != above(br)) crossing[n++] = bottom;
            if (above(br) != above(tr)) crossing[n++] = right;
            if (above(tl) != above(tr)) crossing[n++] = top;
            if (above(bl) != above(tl)) crossing[n++] = left;
            segments.push_back({crossing[0], crossing[1]});
        }
    }

    // Each crossed edge touches at most the two cells that share it.
    std::vector<std::array<std::int64_t, 2>> incident(2 * grid.vertex_count(), {kNone, kNone});
    for (std::size_t s = 0; s < segments.size(); ++s) {
        for (std::size_t e : {segments[s].edge_a, segments[s].edge_b}) {
            auto& slot = incident[e];
            (slot[0] == kNone ? slot[0] : slot[1]) = static_cast<std::int64_t>(s);
        }
    }
    auto degree = [&](std::size_t e) { return (incident[e][0] != kNone) + (incident[e][1] != kNone); };

    std::vector<bool> visited(segments.size(), false);
    ContourSet result;
    result.isovalue = isovalue;

    auto walk = [&](std::size_t start_segment, std::size_t start_edge) {
        Polyline line{edge_point(start_edge)};
        std::int64_t s = static_cast<std::int64_t>(start_segment);
        std::size_t entry = start_edge;
        while (s != kNone && !visited[static_cast<std::size_t>(s)]) {
            const auto& seg = segments[static_cast<std::size_t>(s)];
            visited[static_cast<std::size_t>(s)] = true;
            const std::size_t exit = seg.edge_a == entry ? seg.edge_b : seg.edge_a;
            line.push_back(edge_point(exit));
            const auto& next = incident[exit];
            s = next[0] == s ? next[1] : next[0];
            entry = exit;
        }
        result.polylines.push_back(std::move(line));
    };

    // Open chains first, from their boundary ends, then the remaining loops.
    for (std::size_t s = 0; s < segments.size(); ++s) {
        for (std::size_t e : {segments[s].edge_a, segments[s].edge_b}) {
            if (!visited[s] && degree(e) == 1) walk(s, e);
        }
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (!visited[s]) walk(s, segments[s].edge_a);
    }
    return result;
}

}  // namespace divuq

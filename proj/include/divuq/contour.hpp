// Marching-squares isocontours with deterministic polyline stitching.
#pragma once

#include <vector>

#include "divuq/grid.hpp"

namespace divuq {

struct Point2 {
    double x;
    double y;
    bool operator==(const Point2&) const = default;
};

using Polyline = std::vector<Point2>;

struct ContourSet {
    double isovalue = 0.0;
    std::vector<Polyline> polylines;  // closed loops repeat their first point at the end
};

/// Vertex values equal to the isovalue are nudged up by 1e-12 * |iso + 1|
/// before classification; a vertex is "above" when its value exceeds the
/// isovalue. Saddle cells are split by the average of the four corners.
ContourSet marching_squares(const ScalarField2& field, double isovalue);

}  // namespace divuq

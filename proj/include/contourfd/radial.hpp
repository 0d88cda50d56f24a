#pragma once

// Polar contour representation: N ray lengths from a center point at uniform
// angular spacing 2*pi/N. Ray n points along angle n * 2*pi/N.

#include <vector>

#include "contourfd/geometry.hpp"

namespace contourfd {

/// Rays that miss the contour (center outside the shape) take this length.
constexpr double kMinRayLength = 1e-6;

struct RadialContour {
    Point center;
    std::vector<double> rays;
    /// Set when the requested center lies outside the source polygon.
    bool center_outside = false;

    int n_rays() const { return static_cast<int>(rays.size()); }
};

/// Casts n_rays rays from the center and keeps the farthest boundary hit per
/// ray; rays with no hit fall back to kMinRayLength.
RadialContour extract_radial(const Polygon& poly, Point center, int n_rays);

/// Ray endpoints as a polygon: vertex n = center + rays[n] * (cos, sin) of
/// angle n * 2*pi/N. Star-shaped around the center by construction.
Polygon radial_to_polygon(const RadialContour& rc);

}  // namespace contourfd

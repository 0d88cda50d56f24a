#include "contourfd/radial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace contourfd {

RadialContour extract_radial(const Polygon& poly, Point center, int n_rays) {
    validate(poly);
    if (n_rays < 4)
        throw std::invalid_argument("extract_radial needs at least 4 rays");

    RadialContour rc;
    rc.center = center;
    rc.center_outside = !contains(poly, center);
    rc.rays.resize(n_rays);
    const double dtheta = 2.0 * std::numbers::pi / n_rays;
    for (int n = 0; n < n_rays; ++n) {
        const auto hits = ray_intersections(poly, center, n * dtheta);
        rc.rays[n] = hits.empty() ? kMinRayLength : hits.back();
    }
    return rc;
}

Polygon radial_to_polygon(const RadialContour& rc) {
    const int n = rc.n_rays();
    if (n < 4)
        throw std::invalid_argument("radial contour needs at least 4 rays");

    Polygon poly;
    poly.vertices.reserve(n);
    const double dtheta = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) {
        const double theta = i * dtheta;
        poly.vertices.push_back({rc.center.x + rc.rays[i] * std::cos(theta),
                                 rc.center.y + rc.rays[i] * std::sin(theta)});
    }
    return poly;
}

}  // namespace contourfd

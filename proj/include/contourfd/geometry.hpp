#pragma once

// Polygon primitives: area, centroid, bounding box, ray casting,
// containment and rasterized IoU.
//
// Coordinate convention: image coordinates (y grows downward) are assumed
// throughout the project, but nothing here depends on it. Angles are
// measured in radians from the +x axis toward +y.

#include <cstdint>
#include <vector>

namespace contourfd {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

double dot(Point a, Point b);
double cross(Point a, Point b);
double norm(Point p);

/// Closed polygon; the last vertex connects back to the first.
struct Polygon {
    std::vector<Point> vertices;
};

struct BoundingBox {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
};

/// Throws std::invalid_argument unless the polygon has at least 3 vertices,
/// no two consecutive vertices closer than 1e-9 and nonzero signed area.
void validate(const Polygon& poly);
bool is_valid(const Polygon& poly);

/// Signed shoelace area. Positive when vertices wind from +x toward +y.
double signed_area(const Polygon& poly);

/// Area-weighted centroid of the polygon region. Throws on zero-area input.
Point centroid(const Polygon& poly);

BoundingBox bounding_box(const Polygon& poly);
BoundingBox merge(const BoundingBox& a, const BoundingBox& b);

/// Even-odd containment test.
bool contains(const Polygon& poly, Point p);

/// All distances t >= 0 at which origin + t*(cos angle, sin angle) meets a
/// polygon edge, sorted ascending. Segment endpoints are inclusive; hits
/// closer than 1e-9 to each other collapse to one (a ray through a vertex
/// touches two edges but counts once). Empty when the ray misses.
std::vector<double> ray_intersections(const Polygon& poly, Point origin,
                                      double angle);

/// Uniform raster over `box`: width x height cells, sampled at cell centers.
struct RasterGrid {
    BoundingBox box;
    int width = 0;
    int height = 0;

    double cell_width() const { return box.width() / width; }
    double cell_height() const { return box.height() / height; }
};

/// Scanline even-odd rasterization; one byte per cell, row-major, 1 = inside.
std::vector<std::uint8_t> rasterize(const Polygon& poly, const RasterGrid& grid);

/// Rasterized intersection-over-union on a common resolution x resolution
/// grid covering both bounding boxes. Deterministic for fixed resolution.
/// Throws when resolution < 64 or when neither polygon covers any cell.
double polygon_iou(const Polygon& a, const Polygon& b, int resolution = 512);

/// Resamples the boundary to n points equally spaced by arc length.
/// The walk starts at the boundary point hit by a ray cast from the centroid
/// at angle 0 (farthest hit); if that ray misses (centroid outside a
/// non-convex polygon), it starts at vertex 0 instead.
std::vector<Point> resample_contour(const Polygon& poly, int n);

}  // namespace contourfd

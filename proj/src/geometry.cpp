#include "contourfd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace contourfd {

namespace {
constexpr double kVertexTol = 1e-9;
}

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point p) { return std::hypot(p.x, p.y); }

void validate(const Polygon& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3)
        throw std::invalid_argument("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        if (norm(b - a) < kVertexTol)
            throw std::invalid_argument("polygon has repeated consecutive vertices");
    }
    if (signed_area(poly) == 0.0)
        throw std::invalid_argument("polygon has zero signed area");
}

bool is_valid(const Polygon& poly) {
    try {
        validate(poly);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

double signed_area(const Polygon& poly) {
    const auto& v = poly.vertices;
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        twice += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * twice;
}

Point centroid(const Polygon& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3)
        throw std::invalid_argument("polygon needs at least 3 vertices");
    double twice_area = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        const double w = cross(a, b);
        twice_area += w;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    if (std::abs(twice_area) < 1e-12)
        throw std::invalid_argument("centroid of a zero-area polygon is undefined");
    const double scale = 1.0 / (3.0 * twice_area);
    return {cx * scale, cy * scale};
}

BoundingBox bounding_box(const Polygon& poly) {
    if (poly.vertices.empty())
        throw std::invalid_argument("bounding box of an empty polygon");
    BoundingBox box{poly.vertices[0].x, poly.vertices[0].y,
                    poly.vertices[0].x, poly.vertices[0].y};
    for (const Point& p : poly.vertices) {
        box.x_min = std::min(box.x_min, p.x);
        box.y_min = std::min(box.y_min, p.y);
        box.x_max = std::max(box.x_max, p.x);
        box.y_max = std::max(box.y_max, p.y);
    }
    return box;
}

BoundingBox merge(const BoundingBox& a, const BoundingBox& b) {
    return {std::min(a.x_min, b.x_min), std::min(a.y_min, b.y_min),
            std::max(a.x_max, b.x_max), std::max(a.y_max, b.y_max)};
}

bool contains(const Polygon& poly, Point p) {
    const auto& v = poly.vertices;
    bool inside = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        if ((a.y <= p.y) != (b.y <= p.y)) {
            const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

std::vector<double> ray_intersections(const Polygon& poly, Point origin,
                                      double angle) {
    const Point dir{std::cos(angle), std::sin(angle)};
    const auto& v = poly.vertices;
    std::vector<double> hits;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point a = v[i];
        const Point edge = v[(i + 1) % v.size()] - a;
        const double denom = cross(dir, edge);
        if (std::abs(denom) < 1e-15) continue;  // parallel; endpoints belong to neighbors
        const Point w = a - origin;
        const double t = cross(w, edge) / denom;
        const double s = cross(w, dir) / denom;
        if (t >= -kVertexTol && s >= -kVertexTol && s <= 1.0 + kVertexTol)
            hits.push_back(std::max(t, 0.0));
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end(),
                           [](double a, double b) { return b - a < kVertexTol; }),
               hits.end());
    return hits;
}

std::vector<std::uint8_t> rasterize(const Polygon& poly, const RasterGrid& grid) {
    std::vector<std::uint8_t> mask(
        static_cast<std::size_t>(grid.width) * grid.height, 0);
    const auto& v = poly.vertices;
    const double cw = grid.cell_width();
    const double ch = grid.cell_height();
    std::vector<double> crossings;
    for (int iy = 0; iy < grid.height; ++iy) {
        const double yc = grid.box.y_min + (iy + 0.5) * ch;
        crossings.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point& a = v[i];
            const Point& b = v[(i + 1) % v.size()];
            if ((a.y <= yc) != (b.y <= yc))
                crossings.push_back(a.x + (yc - a.y) * (b.x - a.x) / (b.y - a.y));
        }
        std::sort(crossings.begin(), crossings.end());
        std::uint8_t* row = mask.data() + static_cast<std::size_t>(iy) * grid.width;
        for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
            // cells whose center lies in (crossings[k], crossings[k+1])
            int ix0 = static_cast<int>(
                std::ceil((crossings[k] - grid.box.x_min) / cw - 0.5));
            int ix1 = static_cast<int>(
                std::floor((crossings[k + 1] - grid.box.x_min) / cw - 0.5));
            ix0 = std::max(ix0, 0);
            ix1 = std::min(ix1, grid.width - 1);
            for (int ix = ix0; ix <= ix1; ++ix) row[ix] = 1;
        }
    }
    return mask;
}

double polygon_iou(const Polygon& a, const Polygon& b, int resolution) {
    if (resolution < 64)
        throw std::invalid_argument("polygon_iou needs resolution >= 64");
    validate(a);
    validate(b);
    RasterGrid grid{merge(bounding_box(a), bounding_box(b)), resolution, resolution};
    const auto mask_a = rasterize(a, grid);
    const auto mask_b = rasterize(b, grid);
    std::size_t inter = 0;
    std::size_t uni = 0;
    for (std::size_t i = 0; i < mask_a.size(); ++i) {
        inter += mask_a[i] & mask_b[i];
        uni += mask_a[i] | mask_b[i];
    }
    if (uni == 0)
        throw std::runtime_error("polygon_iou: neither polygon covers any cell");
    return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

// Position on the boundary of the farthest hit of a ray from the centroid at
// angle 0, as (edge index, arc offset within that edge). Falls back to
// vertex 0 when the ray misses.
std::pair<std::size_t, double> contour_start(const Polygon& poly) {
    const Point c = centroid(poly);
    const auto hits = ray_intersections(poly, c, 0.0);
    if (hits.empty()) return {0, 0.0};
    const Point start{c.x + hits.back(), c.y};
    std::size_t best_edge = 0;
    double best_dist = std::numeric_limits<double>::max();
    double best_offset = 0.0;
    const auto& v = poly.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point a = v[i];
        const Point e = v[(i + 1) % v.size()] - a;
        const double len2 = dot(e, e);
        double s = len2 > 0.0 ? dot(start - a, e) / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        const Point proj = a + s * e;
        const double d = norm(start - proj);
        if (d < best_dist) {
            best_dist = d;
            best_edge = i;
            best_offset = s * std::sqrt(len2);
        }
    }
    return {best_edge, best_offset};
}

}  // namespace

std::vector<Point> resample_contour(const Polygon& poly, int n) {
    validate(poly);
    if (n < 3)
        throw std::invalid_argument("resample_contour needs n >= 3");
    const auto& v = poly.vertices;
    const std::size_t m = v.size();

    std::vector<double> edge_len(m);
    double perimeter = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        edge_len[i] = norm(v[(i + 1) % m] - v[i]);
        perimeter += edge_len[i];
    }

    const auto [start_edge, start_offset] = contour_start(poly);
    const double step = perimeter / n;

    std::vector<Point> out;
    out.reserve(n);
    std::size_t edge = start_edge;
    double offset = start_offset;
    double remaining = 0.0;  // arc length still to walk before the next sample
    for (int k = 0; k < n; ++k) {
        while (offset + remaining >= edge_len[edge]) {
            remaining -= edge_len[edge] - offset;
            offset = 0.0;
            edge = (edge + 1) % m;
        }
        offset += remaining;
        const Point a = v[edge];
        const Point b = v[(edge + 1) % m];
        const double s = edge_len[edge] > 0.0 ? offset / edge_len[edge] : 0.0;
        out.push_back(a + s * (b - a));
        remaining = step;
    }
    return out;
}

}  // namespace contourfd

#include "contourfd/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "contourfd/rng.hpp"

namespace contourfd {
namespace {

using nlohmann::json;

Polygon ring_to_polygon(const json& ring) {
    if (!ring.is_array())
        throw std::runtime_error("segmentation ring is not an array");
    if (ring.size() % 2 != 0)
        throw std::runtime_error("odd coordinate count in segmentation");
    if (ring.size() < 6)
        throw std::runtime_error("segmentation ring with fewer than 3 points");
    Polygon poly;
    poly.vertices.reserve(ring.size() / 2);
    for (std::size_t i = 0; i + 1 < ring.size(); i += 2)
        poly.vertices.push_back(
            {ring[i].get<double>(), ring[i + 1].get<double>()});
    return poly;
}

AnnotatedInstance parse_record(const json& rec, std::size_t index,
                               const std::map<std::int64_t, std::string>& names) {
    AnnotatedInstance inst;
    inst.id = rec.value("id", static_cast<std::int64_t>(index + 1));

    if (rec.contains("category_id")) {
        const auto cat = rec["category_id"].get<std::int64_t>();
        const auto it = names.find(cat);
        inst.category = it != names.end() ? it->second : std::to_string(cat);
    } else {
        inst.category = "uncategorized";
    }

    if (!rec.contains("segmentation"))
        throw std::runtime_error("missing segmentation");
    const json& seg = rec["segmentation"];
    if (seg.is_object())
        throw std::runtime_error("run-length segmentation is not supported");
    if (!seg.is_array() || seg.empty())
        throw std::runtime_error("empty segmentation");

    double best_area = -1.0;
    for (const json& ring : seg) {
        Polygon poly = ring_to_polygon(ring);
        if (!is_valid(poly)) continue;
        const double area = std::abs(signed_area(poly));
        if (area > best_area) {
            best_area = area;
            inst.polygon = std::move(poly);
        }
    }
    if (best_area < 0.0) throw std::runtime_error("degenerate polygon");
    inst.multi_part = seg.size() > 1;

    const BoundingBox poly_box = bounding_box(inst.polygon);
    if (rec.contains("bbox")) {
        const json& b = rec["bbox"];
        if (!b.is_array() || b.size() != 4)
            throw std::runtime_error("bbox is not [x, y, w, h]");
        const double x = b[0].get<double>();
        const double y = b[1].get<double>();
        const double w = b[2].get<double>();
        const double h = b[3].get<double>();
        if (w <= 0.0 || h <= 0.0) throw std::runtime_error("empty bbox");
        // half-pixel slack: annotation boxes are commonly rounded
        if (poly_box.x_min < x - 0.5 || poly_box.x_max > x + w + 0.5 ||
            poly_box.y_min < y - 0.5 || poly_box.y_max > y + h + 0.5)
            throw std::runtime_error("segmentation outside bbox");
        inst.bbox = {x, y, x + w, y + h};
    } else {
        inst.bbox = poly_box;
    }
    return inst;
}

void shuffle(std::vector<double>& values, Rng& rng) {
    for (int i = static_cast<int>(values.size()) - 1; i > 0; --i)
        std::swap(values[i], values[rng.uniform_int(0, i)]);
}

Point jittered_center(double radius, Rng& rng) {
    return {rng.uniform(-0.25 * radius, 0.25 * radius),
            rng.uniform(-0.25 * radius, 0.25 * radius)};
}

Polygon make_circle(const ShapeSpec& spec, Rng& rng) {
    const Point c = jittered_center(spec.radius, rng);
    Polygon poly;
    for (int i = 0; i < spec.vertices; ++i) {
        const double t = 2.0 * std::numbers::pi * i / spec.vertices;
        poly.vertices.push_back(
            c + spec.radius * Point{std::cos(t), std::sin(t)});
    }
    return poly;
}

Polygon make_ellipse(const ShapeSpec& spec, Rng& rng) {
    const Point c = jittered_center(spec.radius, rng);
    const double phi = rng.uniform(0.0, std::numbers::pi);
    const double a = spec.radius;
    const double b = spec.radius * spec.aspect;
    Polygon poly;
    for (int i = 0; i < spec.vertices; ++i) {
        const double t = 2.0 * std::numbers::pi * i / spec.vertices;
        const Point p = {a * std::cos(t), b * std::sin(t)};
        poly.vertices.push_back(
            c + Point{p.x * std::cos(phi) - p.y * std::sin(phi),
                      p.x * std::sin(phi) + p.y * std::cos(phi)});
    }
    return poly;
}

Polygon make_regular_polygon(const ShapeSpec& spec, Rng& rng) {
    const Point c = jittered_center(spec.radius, rng);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi / spec.vertices);
    Polygon poly;
    for (int i = 0; i < spec.vertices; ++i) {
        const double t = phi + 2.0 * std::numbers::pi * i / spec.vertices;
        poly.vertices.push_back(
            c + spec.radius * Point{std::cos(t), std::sin(t)});
    }
    return poly;
}

Polygon make_star(const ShapeSpec& spec, Rng& rng) {
    const Point c = jittered_center(spec.radius, rng);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi / spec.vertices);
    const double inner =
        spec.radius * std::max(1.0 - spec.spikiness, 0.05);
    Polygon poly;
    for (int i = 0; i < 2 * spec.vertices; ++i) {
        const double r = i % 2 == 0 ? spec.radius : inner;
        const double t = phi + std::numbers::pi * i / spec.vertices;
        poly.vertices.push_back(c + r * Point{std::cos(t), std::sin(t)});
    }
    return poly;
}

// Valtr's construction: random coordinate multisets split into opposing
// chains give vector components that sum to zero; sorting the vectors by
// angle and chaining them yields a convex polygon.
Polygon make_random_convex(const ShapeSpec& spec, Rng& rng) {
    const int n = spec.vertices;
    const double span = 2.0 * spec.radius;

    const auto components = [&](std::vector<double> coords) {
        std::sort(coords.begin(), coords.end());
        std::vector<double> deltas;
        double last_up = coords.front();
        double last_down = coords.front();
        for (int i = 1; i + 1 < n; ++i) {
            if (rng.uniform_int(0, 1) == 0) {
                deltas.push_back(coords[i] - last_up);
                last_up = coords[i];
            } else {
                deltas.push_back(last_down - coords[i]);
                last_down = coords[i];
            }
        }
        deltas.push_back(coords.back() - last_up);
        deltas.push_back(last_down - coords.back());
        return deltas;
    };

    std::vector<double> xs(n), ys(n);
    for (double& x : xs) x = rng.uniform(0.0, span);
    for (double& y : ys) y = rng.uniform(0.0, span);
    std::vector<double> dx = components(std::move(xs));
    std::vector<double> dy = components(std::move(ys));
    shuffle(dy, rng);

    std::vector<Point> edges(n);
    for (int i = 0; i < n; ++i) edges[i] = {dx[i], dy[i]};
    std::sort(edges.begin(), edges.end(), [](Point a, Point b) {
        return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
    });

    Polygon poly;
    Point cursor{0.0, 0.0};
    for (const Point& e : edges) {
        poly.vertices.push_back(cursor);
        cursor = cursor + e;
    }
    const Point c = centroid(poly);
    for (Point& v : poly.vertices) v = v - c;
    return poly;
}

Polygon make_random_star(const ShapeSpec& spec, Rng& rng) {
    const double jitter = std::numbers::pi / spec.vertices * 0.8;
    Polygon poly;
    for (int i = 0; i < spec.vertices; ++i) {
        const double base = 2.0 * std::numbers::pi * i / spec.vertices;
        const double t = base + rng.uniform(-0.5 * jitter, 0.5 * jitter);
        const double r =
            spec.radius * (1.0 + spec.spikiness * rng.uniform(-1.0, 1.0));
        poly.vertices.push_back(r * Point{std::cos(t), std::sin(t)});
    }
    return poly;
}

Polygon make_shape(const ShapeSpec& spec, Rng& rng) {
    switch (spec.family) {
        case ShapeFamily::circle: return make_circle(spec, rng);
        case ShapeFamily::ellipse: return make_ellipse(spec, rng);
        case ShapeFamily::regular_polygon: return make_regular_polygon(spec, rng);
        case ShapeFamily::star: return make_star(spec, rng);
        case ShapeFamily::random_convex: return make_random_convex(spec, rng);
        case ShapeFamily::random_star: return make_random_star(spec, rng);
    }
    throw std::invalid_argument("unknown shape family");
}

bool star_shaped_about_centroid(const Polygon& poly) {
    if (!is_valid(poly)) return false;
    const Point c = centroid(poly);
    return contains(poly, c);
}

}  // namespace

LoadReport parse_annotations(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("invalid annotation JSON: ") +
                                 e.what());
    }
    if (!doc.is_object() || !doc.contains("annotations") ||
        !doc["annotations"].is_array())
        throw std::runtime_error("annotation document has no annotations array");

    std::map<std::int64_t, std::string> names;
    if (doc.contains("categories") && doc["categories"].is_array())
        for (const json& cat : doc["categories"])
            if (cat.contains("id") && cat.contains("name"))
                names[cat["id"].get<std::int64_t>()] =
                    cat["name"].get<std::string>();

    LoadReport report;
    const json& annotations = doc["annotations"];
    for (std::size_t i = 0; i < annotations.size(); ++i) {
        const json& rec = annotations[i];
        try {
            report.instances.push_back(parse_record(rec, i, names));
        } catch (const std::exception& e) {
            LoadError err;
            err.record_index = i;
            if (rec.is_object() && rec.contains("id") &&
                rec["id"].is_number_integer())
                err.id = rec["id"].get<std::int64_t>();
            err.reason = e.what();
            report.rejected.push_back(std::move(err));
        }
    }
    return report;
}

LoadReport load_annotations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_annotations(buffer.str());
}

ShapeFamily family_from_string(std::string_view name) {
    if (name == "circle") return ShapeFamily::circle;
    if (name == "ellipse") return ShapeFamily::ellipse;
    if (name == "regular") return ShapeFamily::regular_polygon;
    if (name == "star") return ShapeFamily::star;
    if (name == "convex") return ShapeFamily::random_convex;
    if (name == "random-star") return ShapeFamily::random_star;
    throw std::invalid_argument("unknown shape family: " + std::string(name));
}

std::string to_string(ShapeFamily family) {
    switch (family) {
        case ShapeFamily::circle: return "circle";
        case ShapeFamily::ellipse: return "ellipse";
        case ShapeFamily::regular_polygon: return "regular";
        case ShapeFamily::star: return "star";
        case ShapeFamily::random_convex: return "convex";
        case ShapeFamily::random_star: return "random-star";
    }
    return "unknown";
}

std::vector<Polygon> generate(const ShapeSpec& spec, int count,
                              std::uint64_t seed) {
    if (spec.vertices < 3)
        throw std::invalid_argument("shape needs at least 3 vertices");
    if (spec.radius <= 0.0)
        throw std::invalid_argument("shape radius must be positive");
    if (count < 0)
        throw std::invalid_argument("shape count must be non-negative");

    Rng rng(seed);
    std::vector<Polygon> shapes;
    shapes.reserve(count);
    for (int i = 0; i < count; ++i) {
        Polygon poly = make_shape(spec, rng);
        for (int attempt = 0; !star_shaped_about_centroid(poly); ++attempt) {
            if (attempt >= 32)
                throw std::runtime_error(
                    "no usable shape after 32 attempts; relax the shape "
                    "parameters");
            poly = make_shape(spec, rng);
        }
        shapes.push_back(std::move(poly));
    }
    return shapes;
}

std::string annotations_to_json(const std::vector<Polygon>& polygons,
                                const std::string& category) {
    json doc;
    doc["categories"] = json::array({{{"id", 1}, {"name", category}}});
    json annotations = json::array();
    for (std::size_t i = 0; i < polygons.size(); ++i) {
        const Polygon& poly = polygons[i];
        const BoundingBox box = bounding_box(poly);
        json flat = json::array();
        for (const Point& p : poly.vertices) {
            flat.push_back(p.x);
            flat.push_back(p.y);
        }
        annotations.push_back({{"id", static_cast<std::int64_t>(i + 1)},
                               {"category_id", 1},
                               {"bbox", {box.x_min, box.y_min, box.width(),
                                         box.height()}},
                               {"segmentation", json::array({flat})}});
    }
    doc["annotations"] = std::move(annotations);
    return doc.dump(2);
}

void write_annotations(const std::vector<Polygon>& polygons,
                       const std::string& category,
                       const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << annotations_to_json(polygons, category) << '\n';
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

}  // namespace contourfd

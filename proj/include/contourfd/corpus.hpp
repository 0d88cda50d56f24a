#pragma once

// Shape sources: polygon-annotation ingestion (a documented subset of the
// COCO instance format) and a deterministic synthetic shape generator.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "contourfd/geometry.hpp"

namespace contourfd {

struct AnnotatedInstance {
    std::int64_t id = 0;
    std::string category;
    Polygon polygon;
    BoundingBox bbox;
    /// Source segmentation had several parts; this is the largest by area.
    bool multi_part = false;
};

struct LoadError {
    std::size_t record_index = 0;
    std::int64_t id = 0;
    std::string reason;
};

/// Bad records are collected here instead of aborting the load.
struct LoadReport {
    std::vector<AnnotatedInstance> instances;
    std::vector<LoadError> rejected;
};

/// Input schema: a JSON object with an "annotations" array whose entries
/// carry "id", optional "category_id", optional "bbox" [x, y, w, h] and
/// "segmentation" as a list of flat [x1, y1, x2, y2, ...] polygon rings.
/// An optional top-level "categories" array maps category ids to names.
/// RLE-encoded segmentations are rejected per record. Throws only when the
/// document itself does not parse or lacks the "annotations" array.
LoadReport load_annotations(const std::filesystem::path& path);
LoadReport parse_annotations(std::string_view json_text);

enum class ShapeFamily {
    circle,
    ellipse,
    regular_polygon,
    star,
    random_convex,
    random_star
};

ShapeFamily family_from_string(std::string_view name);
std::string to_string(ShapeFamily family);

/// Family-specific knobs; unused fields are ignored. `vertices` is the
/// sample count for circle/ellipse, the corner count for regular polygons
/// and random families, and the spike count for stars (which emit
/// 2*vertices corners).
struct ShapeSpec {
    ShapeFamily family = ShapeFamily::random_star;
    double radius = 100.0;
    double aspect = 0.6;      // ellipse minor/major ratio
    double spikiness = 0.5;   // radius spread as a fraction of radius
    int vertices = 24;
};

/// Deterministic for a fixed (spec, count, seed); polygons land near the
/// origin with extents on the order of spec.radius.
std::vector<Polygon> generate(const ShapeSpec& spec, int count, std::uint64_t seed);

/// Polygons rendered into the annotation schema accepted by
/// load_annotations; ids are 1-based in input order.
std::string annotations_to_json(const std::vector<Polygon>& polygons,
                                const std::string& category);

void write_annotations(const std::vector<Polygon>& polygons,
                       const std::string& category,
                       const std::filesystem::path& path);

}  // namespace contourfd

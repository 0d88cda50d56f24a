#pragma once

// JSON serialization for descriptors and decoded polygons. Descriptors
// serialize as {branch, n_points, kept, mode, coefficients: [[re, im], ...]};
// re-parsing reproduces coefficients to 1e-12 (decimal round-trip, not
// bit-exact). Parse errors throw std::runtime_error.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contourfd/codec.hpp"
#include "contourfd/geometry.hpp"

namespace contourfd {

std::string to_string(Branch branch);
std::string to_string(TruncationMode mode);
Branch branch_from_string(std::string_view name);
TruncationMode mode_from_string(std::string_view name);

std::string descriptor_to_json(const FourierDescriptor& desc);
FourierDescriptor descriptor_from_json(std::string_view text);

/// One encoded instance; polar carries a center plus a single descriptor,
/// cartesian carries its reference point inside the descriptor pair.
/// Centerness scores are optional metadata; negative means absent.
struct PolarInstance {
    std::int64_t id = 0;
    std::string category;
    Point center;
    FourierDescriptor descriptor;
    double polar_centerness = -1.0;
    double gaussian_centerness = -1.0;
};

struct CartesianInstance {
    std::int64_t id = 0;
    std::string category;
    CartesianDescriptor descriptor;
};

/// Exactly one of the two lists is populated; `representation` in the JSON
/// document says which.
struct DescriptorSet {
    std::vector<PolarInstance> polar;
    std::vector<CartesianInstance> cartesian;
};

std::string descriptor_set_to_json(const DescriptorSet& set);
DescriptorSet descriptor_set_from_json(std::string_view text);

struct DecodedPolygon {
    std::int64_t id = 0;
    std::string category;
    Polygon polygon;
};

/// {"polygons": [{id, category, vertices: [[x, y], ...]}, ...]}
std::string polygons_to_json(std::span<const DecodedPolygon> polygons);

}  // namespace contourfd

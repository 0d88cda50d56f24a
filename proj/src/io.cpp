#include "contourfd/io.hpp"

#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace contourfd {
namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("invalid JSON: ") + e.what());
    }
}

json descriptor_node(const FourierDescriptor& desc) {
    json coefficients = json::array();
    for (const auto& c : desc.coefficients)
        coefficients.push_back({c.real(), c.imag()});
    return {{"branch", to_string(desc.branch)},
            {"n_points", desc.n_points()},
            {"kept", desc.kept},
            {"mode", to_string(desc.mode)},
            {"coefficients", std::move(coefficients)}};
}

FourierDescriptor descriptor_from_node(const json& node) {
    if (!node.is_object())
        throw std::runtime_error("descriptor is not a JSON object");
    for (const char* key : {"branch", "n_points", "kept", "mode", "coefficients"})
        if (!node.contains(key))
            throw std::runtime_error(std::string("descriptor missing ") + key);

    FourierDescriptor desc;
    desc.branch = branch_from_string(node["branch"].get<std::string>());
    desc.mode = mode_from_string(node["mode"].get<std::string>());
    desc.kept = node["kept"].get<int>();

    const json& coefficients = node["coefficients"];
    const int n = node["n_points"].get<int>();
    if (!coefficients.is_array() || static_cast<int>(coefficients.size()) != n)
        throw std::runtime_error("coefficient count does not match n_points");
    desc.coefficients.reserve(coefficients.size());
    for (const json& c : coefficients) {
        if (!c.is_array() || c.size() != 2)
            throw std::runtime_error("coefficient is not a [re, im] pair");
        desc.coefficients.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    if (desc.kept < 1 || desc.kept > max_kept(n, desc.mode))
        throw std::runtime_error("kept count out of range for descriptor");
    return desc;
}

Point point_from_node(const json& node, const char* what) {
    if (!node.is_array() || node.size() != 2)
        throw std::runtime_error(std::string(what) + " is not an [x, y] pair");
    return {node[0].get<double>(), node[1].get<double>()};
}

}  // namespace

std::string to_string(Branch branch) {
    switch (branch) {
        case Branch::polar: return "polar";
        case Branch::cartesian_x: return "cartesian-x";
        case Branch::cartesian_y: return "cartesian-y";
    }
    return "unknown";
}

std::string to_string(TruncationMode mode) {
    return mode == TruncationMode::one_sided ? "one-sided" : "symmetric";
}

Branch branch_from_string(std::string_view name) {
    if (name == "polar") return Branch::polar;
    if (name == "cartesian-x") return Branch::cartesian_x;
    if (name == "cartesian-y") return Branch::cartesian_y;
    throw std::runtime_error("unknown branch: " + std::string(name));
}

TruncationMode mode_from_string(std::string_view name) {
    if (name == "one-sided") return TruncationMode::one_sided;
    if (name == "symmetric") return TruncationMode::symmetric;
    throw std::runtime_error("unknown truncation mode: " + std::string(name));
}

std::string descriptor_to_json(const FourierDescriptor& desc) {
    return descriptor_node(desc).dump(2);
}

FourierDescriptor descriptor_from_json(std::string_view text) {
    return descriptor_from_node(parse_document(text));
}

std::string descriptor_set_to_json(const DescriptorSet& set) {
    if (!set.polar.empty() && !set.cartesian.empty())
        throw std::runtime_error("descriptor set mixes representations");

    json instances = json::array();
    if (set.cartesian.empty()) {
        for (const PolarInstance& inst : set.polar) {
            json node = {{"id", inst.id},
                         {"category", inst.category},
                         {"center", {inst.center.x, inst.center.y}},
                         {"descriptor", descriptor_node(inst.descriptor)}};
            if (inst.polar_centerness >= 0.0)
                node["centerness"] = {{"polar", inst.polar_centerness},
                                      {"gaussian", inst.gaussian_centerness}};
            instances.push_back(std::move(node));
        }
    } else {
        for (const CartesianInstance& inst : set.cartesian)
            instances.push_back(
                {{"id", inst.id},
                 {"category", inst.category},
                 {"reference",
                  {inst.descriptor.reference.x, inst.descriptor.reference.y}},
                 {"x", descriptor_node(inst.descriptor.x_branch)},
                 {"y", descriptor_node(inst.descriptor.y_branch)}});
    }
    const json doc = {
        {"representation", set.cartesian.empty() ? "polar" : "cartesian"},
        {"instances", std::move(instances)}};
    return doc.dump(2);
}

DescriptorSet descriptor_set_from_json(std::string_view text) {
    const json doc = parse_document(text);
    if (!doc.is_object() || !doc.contains("representation") ||
        !doc.contains("instances") || !doc["instances"].is_array())
        throw std::runtime_error(
            "descriptor set needs representation and instances fields");

    DescriptorSet set;
    const std::string rep = doc["representation"].get<std::string>();
    for (const json& node : doc["instances"]) {
        if (rep == "polar") {
            PolarInstance inst;
            inst.id = node.value("id", static_cast<std::int64_t>(0));
            inst.category = node.value("category", std::string());
            inst.center = point_from_node(node.at("center"), "center");
            inst.descriptor = descriptor_from_node(node.at("descriptor"));
            if (inst.descriptor.branch != Branch::polar)
                throw std::runtime_error("polar set holds a non-polar branch");
            if (node.contains("centerness")) {
                inst.polar_centerness = node["centerness"].value("polar", -1.0);
                inst.gaussian_centerness =
                    node["centerness"].value("gaussian", -1.0);
            }
            set.polar.push_back(std::move(inst));
        } else if (rep == "cartesian") {
            CartesianInstance inst;
            inst.id = node.value("id", static_cast<std::int64_t>(0));
            inst.category = node.value("category", std::string());
            inst.descriptor.reference =
                point_from_node(node.at("reference"), "reference");
            inst.descriptor.x_branch = descriptor_from_node(node.at("x"));
            inst.descriptor.y_branch = descriptor_from_node(node.at("y"));
            if (inst.descriptor.x_branch.branch != Branch::cartesian_x ||
                inst.descriptor.y_branch.branch != Branch::cartesian_y)
                throw std::runtime_error("cartesian set has mistagged branches");
            set.cartesian.push_back(std::move(inst));
        } else {
            throw std::runtime_error("unknown representation: " + rep);
        }
    }
    return set;
}

std::string polygons_to_json(std::span<const DecodedPolygon> polygons) {
    json out = json::array();
    for (const DecodedPolygon& dp : polygons) {
        json vertices = json::array();
        for (const Point& v : dp.polygon.vertices)
            vertices.push_back({v.x, v.y});
        out.push_back({{"id", dp.id},
                       {"category", dp.category},
                       {"vertices", std::move(vertices)}});
    }
    return json{{"polygons", std::move(out)}}.dump(2);
}

}  // namespace contourfd

#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "contourfd/codec.hpp"
#include "contourfd/gradcheck.hpp"
#include "contourfd/io.hpp"

using namespace contourfd;

namespace {

double max_coeff_diff(const FourierDescriptor& a, const FourierDescriptor& b) {
    double worst = 0.0;
    for (int i = 0; i < a.n_points(); ++i)
        worst = std::max(worst, std::abs(a.coefficients[i] - b.coefficients[i]));
    return worst;
}

}  // namespace

TEST_CASE("branch and mode names round-trip") {
    for (const auto branch :
         {Branch::polar, Branch::cartesian_x, Branch::cartesian_y})
        CHECK(branch_from_string(to_string(branch)) == branch);
    for (const auto mode :
         {TruncationMode::one_sided, TruncationMode::symmetric})
        CHECK(mode_from_string(to_string(mode)) == mode);
    CHECK(to_string(Branch::cartesian_x) == "cartesian-x");
    CHECK(to_string(TruncationMode::one_sided) == "one-sided");
    CHECK_THROWS_AS(branch_from_string("radial"), std::runtime_error);
    CHECK_THROWS_AS(mode_from_string("two-sided"), std::runtime_error);
}

TEST_CASE("descriptors survive JSON round-trips within 1e-12") {
    for (const auto mode :
         {TruncationMode::one_sided, TruncationMode::symmetric}) {
        const auto desc = random_polar_descriptor(22, 7, mode, 123);
        const auto back = descriptor_from_json(descriptor_to_json(desc));
        CHECK(back.kept == desc.kept);
        CHECK(back.branch == desc.branch);
        CHECK(back.mode == desc.mode);
        CHECK(back.n_points() == desc.n_points());
        CHECK(max_coeff_diff(back, desc) <= 1e-12);
    }
}

TEST_CASE("descriptor parsing validates structure") {
    CHECK_THROWS_AS(descriptor_from_json("[]"), std::runtime_error);
    CHECK_THROWS_AS(descriptor_from_json("{"), std::runtime_error);
    CHECK_THROWS_AS(descriptor_from_json(
                        R"({"branch": "polar", "n_points": 4, "kept": 2,
                            "mode": "symmetric"})"),
                    std::runtime_error);
    // coefficient count disagrees with n_points
    CHECK_THROWS_AS(descriptor_from_json(
                        R"({"branch": "polar", "n_points": 4, "kept": 2,
                            "mode": "symmetric",
                            "coefficients": [[1, 0], [0, 0]]})"),
                    std::runtime_error);
    // kept exceeds the symmetric limit
    CHECK_THROWS_AS(descriptor_from_json(
                        R"({"branch": "polar", "n_points": 4, "kept": 4,
                            "mode": "symmetric",
                            "coefficients": [[1,0],[0,0],[0,0],[0,0]]})"),
                    std::runtime_error);
    // malformed pair
    CHECK_THROWS_AS(descriptor_from_json(
                        R"({"branch": "polar", "n_points": 2, "kept": 1,
                            "mode": "one-sided",
                            "coefficients": [[1, 0], [0]]})"),
                    std::runtime_error);
}

TEST_CASE("polar descriptor sets round-trip with centerness metadata") {
    DescriptorSet set;
    PolarInstance inst;
    inst.id = 4;
    inst.category = "blob";
    inst.center = {12.5, -3.25};
    inst.descriptor = random_polar_descriptor(16, 5, TruncationMode::symmetric,
                                              77);
    inst.polar_centerness = 0.625;
    inst.gaussian_centerness = 0.5;
    set.polar.push_back(inst);

    const DescriptorSet back = descriptor_set_from_json(descriptor_set_to_json(set));
    REQUIRE(back.polar.size() == 1);
    CHECK(back.cartesian.empty());
    const PolarInstance& b = back.polar[0];
    CHECK(b.id == 4);
    CHECK(b.category == "blob");
    CHECK(b.center.x == 12.5);
    CHECK(b.center.y == -3.25);
    CHECK(b.polar_centerness == 0.625);
    CHECK(b.gaussian_centerness == 0.5);
    CHECK(max_coeff_diff(b.descriptor, inst.descriptor) <= 1e-12);
}

TEST_CASE("cartesian descriptor sets round-trip") {
    PointContour pc;
    pc.reference = {3.0, 4.0};
    for (int i = 0; i < 12; ++i)
        pc.points.push_back({std::cos(0.5 * i) * 10.0, std::sin(0.5 * i) * 8.0});

    DescriptorSet set;
    CartesianInstance inst;
    inst.id = 9;
    inst.category = "wave";
    inst.descriptor = encode_cartesian(pc, 4, TruncationMode::symmetric);
    set.cartesian.push_back(inst);

    const DescriptorSet back = descriptor_set_from_json(descriptor_set_to_json(set));
    REQUIRE(back.cartesian.size() == 1);
    CHECK(back.polar.empty());
    const CartesianInstance& b = back.cartesian[0];
    CHECK(b.id == 9);
    CHECK(b.descriptor.reference.x == 3.0);
    CHECK(max_coeff_diff(b.descriptor.x_branch, inst.descriptor.x_branch) <=
          1e-12);
    CHECK(max_coeff_diff(b.descriptor.y_branch, inst.descriptor.y_branch) <=
          1e-12);
}

TEST_CASE("descriptor sets reject mixed and mistagged content") {
    DescriptorSet mixed;
    mixed.polar.emplace_back();
    mixed.cartesian.emplace_back();
    CHECK_THROWS_AS(descriptor_set_to_json(mixed), std::runtime_error);

    // a polar set whose instance carries a cartesian branch tag
    const auto desc = random_polar_descriptor(8, 3, TruncationMode::symmetric,
                                              5);
    DescriptorSet set;
    PolarInstance inst;
    inst.descriptor = desc;
    set.polar.push_back(inst);
    std::string text = descriptor_set_to_json(set);
    const auto pos = text.find("\"polar\"");  // the branch tag comes first
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 7, "\"cartesian-x\"");
    CHECK_THROWS_AS(descriptor_set_from_json(text), std::runtime_error);
}

TEST_CASE("decoded polygons serialize with ids and vertices") {
    DecodedPolygon a;
    a.id = 3;
    a.category = "tri";
    a.polygon = Polygon{{{0.0, 0.0}, {4.0, 0.0}, {2.0, 3.0}}};
    const std::string text = polygons_to_json(std::vector<DecodedPolygon>{a});

    const auto doc = nlohmann::json::parse(text);
    REQUIRE(doc.contains("polygons"));
    REQUIRE(doc["polygons"].size() == 1);
    const auto& node = doc["polygons"][0];
    CHECK(node["id"].get<int>() == 3);
    CHECK(node["category"].get<std::string>() == "tri");
    REQUIRE(node["vertices"].size() == 3);
    CHECK(node["vertices"][2][0].get<double>() == 2.0);
    CHECK(node["vertices"][2][1].get<double>() == 3.0);
}

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "contourfd/codec.hpp"
#include "contourfd/gradcheck.hpp"
#include "contourfd/losses.hpp"
#include "contourfd/radial.hpp"
#include "contourfd/rng.hpp"

using namespace contourfd;

namespace {

// independent reference: double minimization over absolute positions,
// normalized by the mean extent of the box
double oracle_chamfer(const PointContour& pred, const PointContour& target,
                      const BoundingBox& norm) {
    const auto p = absolute_points(pred);
    const auto t = absolute_points(target);
    double total = 0.0;
    for (const Point& a : p) {
        double best = 1e300;
        for (const Point& b : t) best = std::min(best, dot(a - b, a - b));
        total += best;
    }
    for (const Point& b : t) {
        double best = 1e300;
        for (const Point& a : p) best = std::min(best, dot(a - b, a - b));
        total += best;
    }
    return total / (0.5 * (norm.width() + norm.height()));
}

PointContour random_contour(Rng& rng, int n, double spread) {
    PointContour pc;
    pc.reference = {rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
    for (int i = 0; i < n; ++i)
        pc.points.push_back(
            {rng.uniform(-spread, spread), rng.uniform(-spread, spread)});
    return pc;
}

Polygon star_polygon(Point center, double r_outer, double r_inner, int spikes) {
    Polygon poly;
    for (int i = 0; i < 2 * spikes; ++i) {
        const double r = i % 2 == 0 ? r_outer : r_inner;
        const double t = std::numbers::pi * i / spikes;
        poly.vertices.push_back(center + r * Point{std::cos(t), std::sin(t)});
    }
    return poly;
}

}  // namespace

TEST_CASE("chamfer distance of two single points") {
    const PointContour pred{{{0.0, 0.0}}, {0.0, 0.0}};
    const PointContour target{{{3.0, 4.0}}, {0.0, 0.0}};
    const BoundingBox norm{0.0, 0.0, 1.0, 1.0};
    const LossResult res = chamfer_distance(pred, target, norm);
    CHECK(std::abs(res.value - 50.0) <= 1e-12);
    REQUIRE(res.grad.size() == 2);
    // both directions pull the predicted point toward (3,4)
    CHECK(std::abs(res.grad[0] - (-12.0)) <= 1e-12);
    CHECK(std::abs(res.grad[1] - (-16.0)) <= 1e-12);
}

TEST_CASE("chamfer normalization divides by the mean box extent") {
    const PointContour pred{{{0.0, 0.0}}, {0.0, 0.0}};
    const PointContour target{{{3.0, 4.0}}, {0.0, 0.0}};
    const double half =
        chamfer_distance(pred, target, {0.0, 0.0, 2.0, 2.0}).value;
    CHECK(std::abs(half - 25.0) <= 1e-12);
}

TEST_CASE("chamfer matches the brute-force oracle on random pairs") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const auto pred = random_contour(rng, rng.uniform_int(1, 30), 20.0);
        const auto target = random_contour(rng, rng.uniform_int(1, 30), 20.0);
        const BoundingBox norm{0.0, 0.0, rng.uniform(5.0, 40.0),
                               rng.uniform(5.0, 40.0)};
        const double got = chamfer_distance(pred, target, norm).value;
        CHECK(std::abs(got - oracle_chamfer(pred, target, norm)) <= 1e-9);
    }
}

TEST_CASE("chamfer is zero on identical sets and symmetric in value") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_contour(rng, 12, 15.0);
        const auto b = random_contour(rng, 9, 15.0);
        const BoundingBox norm{0.0, 0.0, 10.0, 30.0};
        const LossResult self = chamfer_distance(a, a, norm);
        CHECK(self.value == 0.0);
        for (double g : self.grad) CHECK(g == 0.0);
        CHECK(std::abs(chamfer_distance(a, b, norm).value -
                       chamfer_distance(b, a, norm).value) <= 1e-12);
    }
}

TEST_CASE("chamfer scales linearly with coordinates and box together") {
    Rng rng(44);
    const auto a = random_contour(rng, 8, 10.0);
    const auto b = random_contour(rng, 8, 10.0);
    const BoundingBox norm{0.0, 0.0, 12.0, 20.0};
    const double base = chamfer_distance(a, b, norm).value;

    const double s = 3.0;
    auto scale = [&](PointContour pc) {
        pc.reference = s * pc.reference;
        for (Point& p : pc.points) p = s * p;
        return pc;
    };
    const BoundingBox snorm{0.0, 0.0, s * 12.0, s * 20.0};
    const double scaled = chamfer_distance(scale(a), scale(b), snorm).value;
    CHECK(std::abs(scaled - s * base) <= 1e-9 * std::max(1.0, s * base));
}

TEST_CASE("chamfer rejects degenerate inputs") {
    const PointContour ok{{{0.0, 0.0}}, {0.0, 0.0}};
    CHECK_THROWS_AS(
        chamfer_distance(ok, PointContour{}, {0.0, 0.0, 1.0, 1.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(chamfer_distance(ok, ok, {0.0, 0.0, 0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("chamfer gradient agrees with central differences") {
    Rng rng(45);
    auto target = random_contour(rng, 10, 12.0);
    const BoundingBox norm{0.0, 0.0, 15.0, 9.0};
    const auto start = random_contour(rng, 7, 12.0);

    const DifferentiableFn fn = [&](std::span<const double> params) {
        PointContour pred;
        pred.reference = start.reference;
        for (std::size_t i = 0; i + 1 < params.size(); i += 2)
            pred.points.push_back({params[i], params[i + 1]});
        const LossResult res = chamfer_distance(pred, target, norm);
        return GradSample{res.value, res.grad};
    };
    std::vector<double> at;
    for (const Point& p : start.points) {
        at.push_back(p.x);
        at.push_back(p.y);
    }
    const GradReport report = check_gradient(fn, at);
    CHECK(report.passed);
}

TEST_CASE("polar IoU loss on hand-computed rays") {
    const std::vector<double> two{2.0, 2.0};
    const std::vector<double> one{1.0, 1.0};
    const LossResult res = polar_iou_loss(two, one);
    CHECK(std::abs(res.value - std::log(2.0)) <= 1e-12);
    REQUIRE(res.grad.size() == 2);
    // both predictions sit on the max side: d/dp log(sum_max) = 1/4
    CHECK(std::abs(res.grad[0] - 0.25) <= 1e-12);
    CHECK(std::abs(res.grad[1] - 0.25) <= 1e-12);
}

TEST_CASE("polar IoU loss is zero only at equality and symmetric") {
    Rng rng(46);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(8), b(8);
        for (int i = 0; i < 8; ++i) {
            a[i] = rng.uniform(0.5, 10.0);
            b[i] = rng.uniform(0.5, 10.0);
        }
        const LossResult self = polar_iou_loss(a, a);
        CHECK(self.value == 0.0);
        for (double g : self.grad) CHECK(g == 0.0);

        const double ab = polar_iou_loss(a, b).value;
        CHECK(ab >= 0.0);
        CHECK(ab == polar_iou_loss(b, a).value);
        if (a != b) CHECK(ab > 0.0);
    }
}

TEST_CASE("polar IoU gradient agrees with central differences") {
    Rng rng(47);
    std::vector<double> target(12);
    for (double& t : target) t = rng.uniform(1.0, 20.0);

    const DifferentiableFn fn = [&](std::span<const double> params) {
        const LossResult res = polar_iou_loss(params, target);
        return GradSample{res.value, res.grad};
    };
    std::vector<double> at(12);
    for (double& p : at) p = rng.uniform(1.0, 20.0);
    CHECK(check_gradient(fn, at).passed);
}

TEST_CASE("polar IoU rejects mismatched lengths") {
    CHECK_THROWS_AS(
        polar_iou_loss(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
        std::invalid_argument);
}

TEST_CASE("smooth L1 hits both branches") {
    const std::vector<double> zero{0.0};
    for (double beta : {1.0, 2.0}) {
        const LossResult quad =
            smooth_l1(std::vector<double>{beta / 2.0}, zero, beta);
        CHECK(std::abs(quad.value - beta / 8.0) <= 1e-12);
        CHECK(std::abs(quad.grad[0] - 0.5) <= 1e-12);

        const LossResult lin =
            smooth_l1(std::vector<double>{2.0 * beta}, zero, beta);
        CHECK(std::abs(lin.value - 1.5 * beta) <= 1e-12);
        CHECK(std::abs(lin.grad[0] - 1.0) <= 1e-12);

        const LossResult neg =
            smooth_l1(std::vector<double>{-2.0 * beta}, zero, beta);
        CHECK(std::abs(neg.grad[0] + 1.0) <= 1e-12);
    }
}

TEST_CASE("smooth L1 sums over entries and validates") {
    const std::vector<double> pred{1.0, -1.0, 0.5};
    const std::vector<double> target{0.0, 0.0, 0.5};
    const LossResult res = smooth_l1(pred, target, 1.0);
    CHECK(std::abs(res.value - (0.5 + 0.5 + 0.0)) <= 1e-12);
    CHECK_THROWS_AS(smooth_l1(pred, std::vector<double>{1.0}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(smooth_l1(pred, target, 0.0), std::invalid_argument);
}

TEST_CASE("polar IoU through the decoder vanishes at an exact encode") {
    const Polygon target = star_polygon({30.0, 40.0}, 25.0, 14.0, 9);
    const Point center = centroid(target);
    const int n = 36;
    const auto rc = extract_radial(target, center, n);
    const auto desc = encode_polar(rc, max_kept(n, TruncationMode::symmetric),
                                   TruncationMode::symmetric);
    const LossResult res =
        loss_through_decoder(desc, target, LossKind::polar_iou);
    CHECK(res.value <= 1e-9);
    REQUIRE(res.grad.size() == static_cast<std::size_t>(2 * desc.kept));
}

TEST_CASE("decoder losses report one gradient entry per free parameter") {
    const Polygon target = star_polygon({0.0, 0.0}, 20.0, 12.0, 7);
    const int n = 28;
    const auto rc = extract_radial(target, centroid(target), n);
    for (const auto mode :
         {TruncationMode::one_sided, TruncationMode::symmetric}) {
        const auto desc = encode_polar(rc, 6, mode);
        for (const auto kind : {LossKind::chamfer, LossKind::polar_iou}) {
            const LossResult res = loss_through_decoder(desc, target, kind);
            CHECK(res.grad.size() == 12);
            CHECK(res.value >= 0.0);
        }
    }
}

TEST_CASE("cartesian decoder loss covers both branches") {
    const Polygon target = star_polygon({5.0, -3.0}, 22.0, 13.0, 8);
    const auto pc = point_contour_from_polygon(target, 32);
    const auto desc = encode_cartesian(pc, 5, TruncationMode::symmetric);
    const LossResult res =
        loss_through_decoder(desc, target, LossKind::chamfer);
    CHECK(res.grad.size() == 20);  // 2*kept for x, then 2*kept for y
    CHECK_THROWS_AS(loss_through_decoder(desc, target, LossKind::polar_iou),
                    std::invalid_argument);
}

TEST_CASE("resampled target contours are centered on the centroid") {
    const Polygon target = star_polygon({12.0, 7.0}, 18.0, 10.0, 6);
    const auto pc = point_contour_from_polygon(target, 24);
    const Point c = centroid(target);
    CHECK(std::abs(pc.reference.x - c.x) <= 1e-12);
    CHECK(std::abs(pc.reference.y - c.y) <= 1e-12);
    REQUIRE(pc.points.size() == 24);
    // offsets plus reference land on the boundary, so their mean is small
    Point mean{0.0, 0.0};
    for (const Point& p : pc.points) mean = mean + p;
    CHECK(norm((1.0 / 24.0) * mean) <= 1.0);
}

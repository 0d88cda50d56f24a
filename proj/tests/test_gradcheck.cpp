#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "contourfd/codec.hpp"
#include "contourfd/gradcheck.hpp"
#include "contourfd/losses.hpp"
#include "contourfd/rng.hpp"

using namespace contourfd;

namespace {

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

TEST_CASE("check_gradient accepts exact gradients") {
    const DifferentiableFn quadratic = [](std::span<const double> x) {
        GradSample s;
        for (double v : x) {
            s.value += v * v;
            s.grad.push_back(2.0 * v);
        }
        return s;
    };
    const std::vector<double> at{1.0, -2.0, 0.5, 3.0};
    const GradReport report = check_gradient(quadratic, at);
    CHECK(report.passed);
    CHECK(report.max_rel_error <= 1e-8);

    const DifferentiableFn linear = [](std::span<const double> x) {
        const double c[] = {3.0, -1.0, 0.25};
        GradSample s;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s.value += c[i] * x[i];
            s.grad.push_back(c[i]);
        }
        return s;
    };
    CHECK(check_gradient(linear, std::vector<double>{4.0, 5.0, -6.0})
              .max_abs_error <= 1e-10);
}

TEST_CASE("check_gradient flags corrupted gradients") {
    const DifferentiableFn corrupted = [](std::span<const double> x) {
        GradSample s;
        for (double v : x) {
            s.value += v * v;
            s.grad.push_back(2.0 * v * 1.01);  // 1% off
        }
        return s;
    };
    const GradReport report =
        check_gradient(corrupted, std::vector<double>{1.0, 2.0});
    CHECK(!report.passed);
    CHECK(report.max_rel_error >= 1e-3);
}

TEST_CASE("check_gradient validates its inputs") {
    const DifferentiableFn short_grad = [](std::span<const double> x) {
        GradSample s;
        s.value = x[0];
        s.grad = {1.0};
        return s;
    };
    CHECK_THROWS_AS(
        check_gradient(short_grad, std::vector<double>{1.0, 2.0}),
        std::invalid_argument);
    const DifferentiableFn ok = [](std::span<const double> x) {
        return GradSample{x[0], {1.0}};
    };
    CHECK_THROWS_AS(check_gradient(ok, std::vector<double>{1.0}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("random descriptors decode to rays far from the clamp") {
    for (const auto mode :
         {TruncationMode::one_sided, TruncationMode::symmetric}) {
        for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
            const auto desc = random_polar_descriptor(32, 8, mode, seed);
            CHECK(desc.kept == 8);
            CHECK(desc.n_points() == 32);
            CHECK(desc.mode == mode);
            const auto rc = decode_polar(desc, {0.0, 0.0});
            for (double r : rc.rays) CHECK(r > 1.0);
        }
    }
}

TEST_CASE("clamped rays block gradient flow entirely") {
    // constant rays far below zero: every decoded ray sits at the floor,
    // so both the analytic and the numeric gradient must vanish
    const int n = 16;
    FourierDescriptor desc;
    desc.coefficients.assign(n, 0.0);
    desc.coefficients[0] = -40.0 * n;
    desc.kept = 4;
    desc.branch = Branch::polar;
    desc.mode = TruncationMode::symmetric;

    const Polygon target = star_polygon({0.0, 0.0}, 20.0, 12.0, 8);
    for (const auto kind : {LossKind::chamfer, LossKind::polar_iou}) {
        const LossResult res = loss_through_decoder(desc, target, kind);
        for (double g : res.grad) CHECK(g == 0.0);

        const DifferentiableFn fn = [&](std::span<const double> params) {
            const auto d = with_parameters(desc, params);
            const LossResult r = loss_through_decoder(d, target, kind);
            return GradSample{r.value, r.grad};
        };
        const GradReport report = check_gradient(fn, pack_parameters(desc));
        CHECK(report.passed);
        CHECK(report.max_abs_error == 0.0);
    }
}

TEST_CASE("decoder losses pass the finite-difference check on sample seeds") {
    for (const auto mode :
         {TruncationMode::one_sided, TruncationMode::symmetric}) {
        for (std::uint64_t seed : {3ULL, 11ULL, 42ULL}) {
            const DecoderLossCheck res = check_decoder_losses(32, 8, mode, seed);
            CHECK(res.seed == seed);
            CHECK(res.chamfer.passed);
            CHECK(res.polar_iou.passed);
        }
    }
}

TEST_CASE("decoder loss checks are deterministic per seed") {
    const DecoderLossCheck a =
        check_decoder_losses(24, 6, TruncationMode::symmetric, 5);
    const DecoderLossCheck b =
        check_decoder_losses(24, 6, TruncationMode::symmetric, 5);
    CHECK(a.chamfer.max_rel_error == b.chamfer.max_rel_error);
    CHECK(a.polar_iou.max_rel_error == b.polar_iou.max_rel_error);
}

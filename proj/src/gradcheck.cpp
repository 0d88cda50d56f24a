#include "contourfd/gradcheck.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "contourfd/radial.hpp"
#include "contourfd/rng.hpp"

namespace contourfd {

GradReport check_gradient(const DifferentiableFn& fn, std::span<const double> at,
                          double step, double tol) {
    if (step <= 0.0) throw std::invalid_argument("check_gradient needs step > 0");

    const GradSample base = fn(at);
    if (base.grad.size() != at.size())
        throw std::invalid_argument("check_gradient: gradient length mismatch");

    GradReport report;
    std::vector<double> probe(at.begin(), at.end());
    for (std::size_t i = 0; i < at.size(); ++i) {
        probe[i] = at[i] + step;
        const double f_plus = fn(probe).value;
        probe[i] = at[i] - step;
        const double f_minus = fn(probe).value;
        probe[i] = at[i];

        const double numeric = (f_plus - f_minus) / (2.0 * step);
        const double abs_err = std::abs(base.grad[i] - numeric);
        const double rel_err =
            abs_err / std::max({std::abs(base.grad[i]), std::abs(numeric), 1e-8});
        if (abs_err > report.max_abs_error) report.max_abs_error = abs_err;
        if (rel_err > report.max_rel_error) {
            report.max_rel_error = rel_err;
            report.worst_index = i;
        }
    }
    report.passed = report.max_rel_error <= tol;
    return report;
}

namespace {

// Coefficients scaled so the decoded rays stay near the base radius: the DC
// term fixes the radius and each harmonic contributes at most |x_k|/N.
FourierDescriptor draw_descriptor(int n_points, int kept, TruncationMode mode,
                                  Rng& rng) {
    FourierDescriptor like;
    like.coefficients.assign(n_points, {0.0, 0.0});
    like.kept = kept;
    like.branch = Branch::polar;
    like.mode = mode;

    const double radius = rng.uniform(20.0, 40.0);
    const double spread = n_points * radius / (8.0 * kept);
    std::vector<double> params(2 * static_cast<std::size_t>(kept));
    params[0] = n_points * radius;
    params[1] = rng.uniform(-spread, spread);  // inert for the real-part decode
    for (int k = 1; k < kept; ++k) {
        params[2 * k] = rng.uniform(-spread, spread);
        params[2 * k + 1] = rng.uniform(-spread, spread);
    }
    return with_parameters(like, params);
}

Polygon draw_star_target(int n_points, Rng& rng) {
    RadialContour rc;
    rc.center = {rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
    rc.rays.resize(n_points);
    const double radius = rng.uniform(20.0, 40.0);
    for (double& r : rc.rays) r = radius * rng.uniform(0.7, 1.3);
    return radial_to_polygon(rc);
}

// Distance margin between the best and second-best nearest-neighbor
// candidate for every point of `from`; a finite-difference probe must not
// flip any assignment.
double assignment_margin(const std::vector<Point>& from,
                         const std::vector<Point>& to) {
    double margin = std::numeric_limits<double>::max();
    for (const Point& q : from) {
        double d1 = std::numeric_limits<double>::max();
        double d2 = std::numeric_limits<double>::max();
        for (const Point& p : to) {
            const Point d = p - q;
            const double dist = std::sqrt(dot(d, d));
            if (dist < d1) {
                d2 = d1;
                d1 = dist;
            } else if (dist < d2) {
                d2 = dist;
            }
        }
        margin = std::min(margin, d2 - d1);
    }
    return margin;
}

}  // namespace

FourierDescriptor random_polar_descriptor(int n_points, int kept,
                                          TruncationMode mode, std::uint64_t seed) {
    Rng rng(seed);
    return draw_descriptor(n_points, kept, mode, rng);
}

DecoderLossCheck check_decoder_losses(int n_points, int kept, TruncationMode mode,
                                      std::uint64_t seed, double step, double tol) {
    constexpr int kMaxAttempts = 64;
    constexpr double kRayTieMargin = 1e-4;
    constexpr double kAssignmentMargin = 1e-5;
    constexpr double kMinGradComponent = 1e-5;

    Rng rng(seed);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const FourierDescriptor desc = draw_descriptor(n_points, kept, mode, rng);
        const Polygon target = draw_star_target(n_points, rng);
        const Point center = centroid(target);

        const RadialContour pred = decode_polar(desc, center);
        const RadialContour target_rc = extract_radial(target, center, n_points);

        double ray_gap = std::numeric_limits<double>::max();
        for (int i = 0; i < n_points; ++i)
            ray_gap = std::min(ray_gap, std::abs(pred.rays[i] - target_rc.rays[i]));
        if (ray_gap < kRayTieMargin) continue;

        // the chamfer path scores the ray endpoints, which are exactly the
        // vertices of the decoded polygon
        const auto pred_pts = radial_to_polygon(pred).vertices;
        const auto target_pts =
            absolute_points(point_contour_from_polygon(target, n_points));
        if (assignment_margin(pred_pts, target_pts) < kAssignmentMargin ||
            assignment_margin(target_pts, pred_pts) < kAssignmentMargin)
            continue;

        // In directions where the loss is locally flat (the polar-iou ray
        // gradient is quantized to +-1/sum values whose harmonic projections
        // can cancel exactly, e.g. for strictly nested shapes), central
        // differences measure only rounding noise, and the relative-error
        // floor turns that noise into a spurious failure. Re-roll until
        // every free parameter has a clearly nonzero analytic gradient.
        // Im(x_0) is exempt: it never reaches the real-part decode, so both
        // sides of the comparison are exactly zero there.
        const auto informative = [&](LossKind kind) {
            const LossResult loss = loss_through_decoder(desc, target, kind);
            for (std::size_t i = 0; i < loss.grad.size(); ++i) {
                if (i == 1) continue;
                if (std::abs(loss.grad[i]) < kMinGradComponent) return false;
            }
            return true;
        };
        if (!informative(LossKind::chamfer) ||
            !informative(LossKind::polar_iou))
            continue;

        const auto make_fn = [&](LossKind kind) {
            return [&, kind](std::span<const double> params) {
                const FourierDescriptor probe = with_parameters(desc, params);
                const LossResult loss = loss_through_decoder(probe, target, kind);
                return GradSample{loss.value, loss.grad};
            };
        };

        const auto params = pack_parameters(desc);
        DecoderLossCheck check;
        check.seed = seed;
        check.chamfer = check_gradient(make_fn(LossKind::chamfer), params, step, tol);
        check.polar_iou = check_gradient(make_fn(LossKind::polar_iou), params, step, tol);
        return check;
    }
    throw std::runtime_error("check_decoder_losses: no tie-free draw found");
}

}  // namespace contourfd

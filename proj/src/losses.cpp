#include "contourfd/losses.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "contourfd/radial.hpp"

namespace contourfd {

namespace {

std::size_t nearest(const std::vector<Point>& pts, Point q) {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point d = pts[i] - q;
        const double d2 = dot(d, d);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

// Accumulates d(loss)/d(decoded signal) back onto the packed coefficient
// parameters of `like`. The decode is linear:
//   d p_n / d Re(x_k) =  cos(2*pi*k*n/N) / N
//   d p_n / d Im(x_k) = -sin(2*pi*k*n/N) / N
// and in symmetric mode a free coefficient also drives its conjugate
// partner, which contributes the same real part again (factor 2).
std::vector<double> signal_grad_to_params(std::span<const double> d_signal,
                                          const FourierDescriptor& like) {
    const int n = like.n_points();
    std::vector<double> grad(2 * static_cast<std::size_t>(like.kept), 0.0);
    for (int k = 0; k < like.kept; ++k) {
        const bool tied = like.mode == TruncationMode::symmetric && k >= 1 &&
                          n - k > like.kept - 1;
        const double factor = (tied ? 2.0 : 1.0) / n;
        double d_re = 0.0;
        double d_im = 0.0;
        for (int m = 0; m < n; ++m) {
            const double ang = 2.0 * std::numbers::pi * k * m / n;
            d_re += d_signal[m] * std::cos(ang);
            d_im -= d_signal[m] * std::sin(ang);
        }
        grad[2 * k] = factor * d_re;
        grad[2 * k + 1] = factor * d_im;
    }
    return grad;
}

}  // namespace

LossResult chamfer_distance(const PointContour& pred, const PointContour& target,
                            const BoundingBox& norm) {
    if (pred.points.empty() || target.points.empty())
        throw std::invalid_argument("chamfer_distance needs nonempty contours");
    const double denom = 0.5 * (norm.width() + norm.height());
    if (denom <= 0.0)
        throw std::invalid_argument("chamfer_distance: degenerate normalization box");

    const auto s1 = absolute_points(pred);
    const auto s2 = absolute_points(target);

    LossResult result;
    result.grad.assign(2 * s1.size(), 0.0);

    double sum = 0.0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        const Point d = s1[i] - s2[nearest(s2, s1[i])];
        sum += dot(d, d);
        result.grad[2 * i] += 2.0 * d.x;
        result.grad[2 * i + 1] += 2.0 * d.y;
    }
    for (std::size_t j = 0; j < s2.size(); ++j) {
        const std::size_t i = nearest(s1, s2[j]);
        const Point d = s1[i] - s2[j];
        sum += dot(d, d);
        result.grad[2 * i] += 2.0 * d.x;
        result.grad[2 * i + 1] += 2.0 * d.y;
    }

    result.value = sum / denom;
    for (double& g : result.grad) g /= denom;
    return result;
}

LossResult polar_iou_loss(std::span<const double> pred_rays,
                          std::span<const double> target_rays) {
    if (pred_rays.size() != target_rays.size())
        throw std::invalid_argument("polar_iou_loss: ray counts differ");
    if (pred_rays.empty())
        throw std::invalid_argument("polar_iou_loss: empty ray lists");

    double sum_max = 0.0;
    double sum_min = 0.0;
    for (std::size_t i = 0; i < pred_rays.size(); ++i) {
        if (pred_rays[i] <= 0.0 || target_rays[i] <= 0.0)
            throw std::invalid_argument("polar_iou_loss needs positive ray lengths");
        sum_max += std::max(pred_rays[i], target_rays[i]);
        sum_min += std::min(pred_rays[i], target_rays[i]);
    }

    LossResult result;
    result.value = std::log(sum_max / sum_min);
    result.grad.resize(pred_rays.size());
    for (std::size_t i = 0; i < pred_rays.size(); ++i) {
        if (pred_rays[i] > target_rays[i])
            result.grad[i] = 1.0 / sum_max;
        else if (pred_rays[i] < target_rays[i])
            result.grad[i] = -1.0 / sum_min;
        else
            result.grad[i] = 0.0;
    }
    return result;
}

LossResult smooth_l1(std::span<const double> pred, std::span<const double> target,
                     double beta) {
    if (pred.size() != target.size())
        throw std::invalid_argument("smooth_l1: vector lengths differ");
    if (beta <= 0.0)
        throw std::invalid_argument("smooth_l1 needs beta > 0");

    LossResult result;
    result.grad.resize(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - target[i];
        if (std::abs(d) < beta) {
            result.value += 0.5 * d * d / beta;
            result.grad[i] = d / beta;
        } else {
            result.value += std::abs(d) - 0.5 * beta;
            result.grad[i] = d > 0.0 ? 1.0 : -1.0;
        }
    }
    return result;
}

PointContour point_contour_from_polygon(const Polygon& poly, int n) {
    const Point c = centroid(poly);
    PointContour pc;
    pc.reference = c;
    for (const Point& p : resample_contour(poly, n)) pc.points.push_back(p - c);
    return pc;
}

LossResult loss_through_decoder(const FourierDescriptor& desc, const Polygon& target,
                                LossKind kind, const DecoderLossOptions& opts) {
    if (desc.branch != Branch::polar)
        throw std::invalid_argument("loss_through_decoder: descriptor is not polar");
    const int n = desc.n_points();
    const Point center = opts.center ? *opts.center : centroid(target);

    const auto raw = idft_real(desc.coefficients);
    std::vector<double> rays(raw.size());
    std::vector<bool> clamped(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        clamped[i] = raw[i] < kMinRayLength;
        rays[i] = clamped[i] ? kMinRayLength : raw[i];
    }

    std::vector<double> d_rays(n, 0.0);
    LossResult inner;
    if (kind == LossKind::polar_iou) {
        const RadialContour target_rc = extract_radial(target, center, n);
        inner = polar_iou_loss(rays, target_rc.rays);
        d_rays = inner.grad;
    } else {
        PointContour pred;
        pred.reference = center;
        pred.points.resize(n);
        const double dtheta = 2.0 * std::numbers::pi / n;
        for (int i = 0; i < n; ++i)
            pred.points[i] = {rays[i] * std::cos(i * dtheta),
                              rays[i] * std::sin(i * dtheta)};
        inner = chamfer_distance(pred, point_contour_from_polygon(target, n),
                                 bounding_box(target));
        // project the per-point gradient onto each ray direction
        for (int i = 0; i < n; ++i)
            d_rays[i] = inner.grad[2 * i] * std::cos(i * dtheta) +
                        inner.grad[2 * i + 1] * std::sin(i * dtheta);
    }

    for (int i = 0; i < n; ++i)
        if (clamped[i]) d_rays[i] = 0.0;

    LossResult result;
    result.value = inner.value;
    result.grad = signal_grad_to_params(d_rays, desc);
    return result;
}

LossResult loss_through_decoder(const CartesianDescriptor& desc, const Polygon& target,
                                LossKind kind, const DecoderLossOptions& opts) {
    if (kind == LossKind::polar_iou)
        throw std::invalid_argument("polar-iou loss requires the polar branch");

    (void)opts;  // the cartesian reference point travels with the descriptor
    PointContour pred = decode_cartesian(desc);

    const int n = pred.n_points();
    const LossResult inner = chamfer_distance(
        pred, point_contour_from_polygon(target, n), bounding_box(target));

    std::vector<double> d_x(n), d_y(n);
    for (int i = 0; i < n; ++i) {
        d_x[i] = inner.grad[2 * i];
        d_y[i] = inner.grad[2 * i + 1];
    }

    LossResult result;
    result.value = inner.value;
    result.grad = signal_grad_to_params(d_x, desc.x_branch);
    const auto grad_y = signal_grad_to_params(d_y, desc.y_branch);
    result.grad.insert(result.grad.end(), grad_y.begin(), grad_y.end());
    return result;
}

}  // namespace contourfd

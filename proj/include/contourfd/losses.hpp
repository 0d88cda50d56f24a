#pragma once

// Contour losses with analytic gradients. The standalone losses report
// gradients with respect to their immediate predicted inputs;
// loss_through_decoder chains them through the linear inverse-DFT decoder
// and reports gradients with respect to the descriptor's free coefficient
// parameters (2*kept per branch, packed as in pack_parameters).

#include <optional>
#include <span>

#include "contourfd/codec.hpp"
#include "contourfd/geometry.hpp"

namespace contourfd {

struct LossResult {
    double value = 0.0;
    std::vector<double> grad;
};

enum class LossKind { chamfer, polar_iou };

/// Symmetric sum of squared nearest-neighbor distances between the two
/// point sets (absolute positions), divided by the mean extent
/// (width+height)/2 of `norm`. Nearest-neighbor ties break toward the
/// lowest index. grad is d(value)/d(pred points), packed [x0, y0, x1, y1, ...].
LossResult chamfer_distance(const PointContour& pred, const PointContour& target,
                            const BoundingBox& norm);

/// log(sum_n max(p_n, t_n) / sum_n min(p_n, t_n)); zero iff pred == target.
/// grad is d(value)/d(pred rays); exactly tied entries get a zero
/// subgradient.
LossResult polar_iou_loss(std::span<const double> pred_rays,
                          std::span<const double> target_rays);

/// Elementwise smooth-L1 summed over entries: 0.5*d^2/beta for |d| < beta,
/// |d| - 0.5*beta otherwise. grad is d(value)/d(pred).
LossResult smooth_l1(std::span<const double> pred, std::span<const double> target,
                     double beta = 1.0);

/// Target contour resampled to n points by arc length, expressed as offsets
/// from the centroid.
PointContour point_contour_from_polygon(const Polygon& poly, int n);

struct DecoderLossOptions {
    /// Decode center for the polar branch; target centroid when unset.
    std::optional<Point> center;
};

/// Decodes the descriptor, evaluates the loss against the target contour
/// (ray extraction for polar-iou, arc-length resampling for chamfer) and
/// back-propagates through the decoder. Rays at the clamp floor contribute
/// zero gradient. grad has 2*kept entries.
LossResult loss_through_decoder(const FourierDescriptor& desc, const Polygon& target,
                                LossKind kind, const DecoderLossOptions& opts = {});

/// Cartesian variant; chamfer only. grad has 2*kept entries for the x
/// branch followed by 2*kept for the y branch.
LossResult loss_through_decoder(const CartesianDescriptor& desc, const Polygon& target,
                                LossKind kind, const DecoderLossOptions& opts = {});

}  // namespace contourfd

#pragma once

// Centerness metrics scoring how well a candidate point sits at the middle
// of a shape: the polar min/max-ray score, its normalization against the
// center-of-mass score, and a separable Gaussian of the offset from the
// mask mean.

#include <span>

#include "contourfd/geometry.hpp"

namespace contourfd {

/// Per-axis mean and standard deviation of a rasterized mask interior.
struct MaskStats {
    double mu_x = 0.0;
    double mu_y = 0.0;
    double sigma_x = 0.0;
    double sigma_y = 0.0;
};

/// sqrt(min ray / max ray), in [0, 1]. Scale- and permutation-invariant.
double polar_centerness(std::span<const double> rays);

/// pc_i / pc_max clamped to 1; pc_max is the polar centerness at the
/// instance's center of mass. Throws when pc_max is not positive.
double normalized_centerness(double pc_i, double pc_max);

/// exp(-alpha*((m-mu_x)/sigma_x)^2) * exp(-alpha*((n-mu_y)/sigma_y)^2).
double gaussian_centerness(double m, double n, const MaskStats& stats,
                           double alpha);

/// Population mean/std of interior cell centers, rasterized over the
/// polygon's own bounding box at resolution x resolution. Throws when the
/// rasterization is empty.
MaskStats mask_stats(const Polygon& poly, int resolution = 512);

/// Post-hoc additive offset some pipelines apply at inference time; the
/// result may exceed 1.
inline double with_centerness_factor(double centerness, double factor) {
    return centerness + factor;
}

}  // namespace contourfd

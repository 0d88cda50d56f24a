#pragma once

// Central finite-difference verification of the analytic gradients.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "contourfd/codec.hpp"
#include "contourfd/losses.hpp"

namespace contourfd {

struct GradSample {
    double value = 0.0;
    std::vector<double> grad;
};

using DifferentiableFn = std::function<GradSample(std::span<const double>)>;

struct GradReport {
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;
    std::size_t worst_index = 0;
    bool passed = false;
};

/// Compares the analytic gradient at `at` against central differences
/// (f(x+h*e_i) - f(x-h*e_i)) / 2h per parameter. Relative error uses the
/// denominator max(|analytic|, |numeric|, 1e-8); passed means the maximum
/// relative error stays within tol.
GradReport check_gradient(const DifferentiableFn& fn, std::span<const double> at,
                          double step = 1e-5, double tol = 1e-4);

/// Seeded polar descriptor whose decoded rays sit well above the clamp
/// floor, so bulk gradient checks stay away from the clamp kink.
FourierDescriptor random_polar_descriptor(int n_points, int kept,
                                          TruncationMode mode, std::uint64_t seed);

struct DecoderLossCheck {
    GradReport chamfer;
    GradReport polar_iou;
    std::uint64_t seed = 0;
};

/// One seeded end-to-end check of loss_through_decoder for both loss kinds:
/// a random descriptor scored against a random star-shaped target. Draws are
/// re-rolled while any pred/target ray pair or nearest-neighbor assignment
/// sits close enough to a tie to break the finite-difference probe.
DecoderLossCheck check_decoder_losses(int n_points, int kept, TruncationMode mode,
                                      std::uint64_t seed, double step = 1e-5,
                                      double tol = 1e-4);

}  // namespace contourfd

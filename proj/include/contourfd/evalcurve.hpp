#pragma once

// Reconstruction-fidelity experiments: sweep the number of kept Fourier
// coefficients over a shape corpus and report rasterized-IoU statistics,
// plus an SVG overlay renderer for qualitative inspection.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "contourfd/codec.hpp"
#include "contourfd/geometry.hpp"

namespace contourfd {

struct CurveOptions {
    int n_points = 90;
    TruncationMode mode = TruncationMode::symmetric;
    int resolution = 512;
};

/// Aggregate fidelity at one coefficient budget. `parameters` counts the
/// stored real numbers (2 per complex coefficient). Quantiles use linear
/// interpolation between order statistics; all statistics are 0 when no
/// instance survived.
struct CurvePoint {
    int kept = 0;
    int parameters = 0;
    double mean_iou = 0.0;
    double median_iou = 0.0;
    double p10_iou = 0.0;
    double mean_ray_l2 = 0.0;
    int n_instances = 0;
};

struct TruncationCurve {
    std::vector<CurvePoint> points;
    /// Instances dropped because some step failed (degenerate polygon,
    /// empty raster overlap, ...); failures never abort the sweep.
    int skipped = 0;
};

/// Coefficient budgets used when the caller does not pick their own.
std::vector<int> default_ks();

/// Drops budgets outside [1, max_kept(n, mode)], preserving order.
std::vector<int> valid_ks(std::span<const int> ks, int n, TruncationMode mode);

/// Encode-truncate-decode one shape at a single budget: radial contour from
/// the centroid, DFT, keep `kept` coefficients, inverse transform back to a
/// polygon. The building block behind the sweep and the renderer.
Polygon reconstruct_at(const Polygon& shape, int kept, const CurveOptions& opts);

/// Full sweep: one CurvePoint per budget, aggregated over the corpus.
/// Budgets must already be valid for (opts.n_points, opts.mode).
TruncationCurve truncation_curve(const std::vector<Polygon>& shapes,
                                 std::span<const int> ks,
                                 const CurveOptions& opts);

/// CSV with header parameters,mean_iou,median_iou,p10_iou,n_instances and
/// six fractional digits on the IoU columns.
void emit_curve_csv(const TruncationCurve& curve, std::ostream& out);

/// SVG overlay: the source outline in black plus one colored reconstruction
/// per budget, with a legend giving each budget and its IoU. Throws when the
/// file cannot be written.
void render_reconstructions(const Polygon& shape, std::span<const int> ks,
                            const CurveOptions& opts,
                            const std::filesystem::path& path);

}  // namespace contourfd

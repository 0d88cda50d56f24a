#pragma once

// Fourier shape codec: forward DFT of sampled contours, coefficient
// truncation and the inverse-DFT shape decoder in polar and Cartesian
// variants.
//
// Normalization is fixed project-wide:
//
//   forward   X_k = sum_n p_n * exp(-j*2*pi*k*n/N)
//   inverse   p_n = (1/N) * sum_k X_k * exp(+j*2*pi*k*n/N)
//
// The power-of-two fast path and the direct-summation path must agree with
// a brute-force oracle to 1e-9; tests enforce this.

#include <complex>
#include <span>
#include <vector>

#include "contourfd/geometry.hpp"
#include "contourfd/radial.hpp"

namespace contourfd {

enum class Branch { polar, cartesian_x, cartesian_y };
enum class TruncationMode { one_sided, symmetric };

/// N-point complex spectrum with the first `kept` coefficients free and the
/// rest zeroed according to the truncation mode. One-sided zeroes indices
/// kept..N-1 (mirrors a predictor that emits only low frequencies);
/// symmetric also keeps the conjugate partners N-kept+1..N-1, which
/// preserves real-valued reconstruction.
struct FourierDescriptor {
    std::vector<std::complex<double>> coefficients;
    int kept = 0;
    Branch branch = Branch::polar;
    TruncationMode mode = TruncationMode::symmetric;

    int n_points() const { return static_cast<int>(coefficients.size()); }
};

/// Contour as point offsets from a reference point; point n sits at
/// reference + points[n].
struct PointContour {
    std::vector<Point> points;
    Point reference;

    int n_points() const { return static_cast<int>(points.size()); }
};

/// Independent x and y coefficient branches sharing N and kept count.
struct CartesianDescriptor {
    FourierDescriptor x_branch;
    FourierDescriptor y_branch;
    Point reference;
};

std::vector<std::complex<double>> dft(std::span<const double> signal);
std::vector<std::complex<double>> idft(std::span<const std::complex<double>> spectrum);

/// Real part of idft(); the fast path behind polar decoding.
std::vector<double> idft_real(std::span<const std::complex<double>> spectrum);

/// Largest admissible kept count: N for one-sided, floor(N/2)+1 for
/// symmetric (at which point symmetric truncation keeps the full spectrum).
int max_kept(int n_points, TruncationMode mode);

/// Zeroes coefficients outside the kept set. Throws when kept is out of
/// range for the mode.
FourierDescriptor truncate(const FourierDescriptor& desc, int kept,
                           TruncationMode mode);

FourierDescriptor encode_polar(const RadialContour& rc, int kept,
                               TruncationMode mode);

/// Rays = real part of the inverse transform, clamped below at
/// kMinRayLength so the result is always a valid radial contour.
RadialContour decode_polar(const FourierDescriptor& desc, Point center);

CartesianDescriptor encode_cartesian(const PointContour& pc, int kept,
                                     TruncationMode mode);
PointContour decode_cartesian(const CartesianDescriptor& desc);

/// Absolute positions reference + offset for each contour point.
std::vector<Point> absolute_points(const PointContour& pc);

/// Free real parameters of a descriptor: [Re x_0, Im x_0, ..., Re x_{K-1},
/// Im x_{K-1}]. In symmetric mode the conjugate partners are tied, not free.
std::vector<double> pack_parameters(const FourierDescriptor& desc);

/// Rebuilds a descriptor shaped like `like` from packed parameters; in
/// symmetric mode conjugate partners are restored from the free half.
FourierDescriptor with_parameters(const FourierDescriptor& like,
                                  std::span<const double> params);

}  // namespace contourfd

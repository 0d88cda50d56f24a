#include "contourfd/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace contourfd {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 transform, no scaling. sign = -1 forward,
// +1 inverse.
void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// cos/sin of 2*pi*m/N for m in [0, N); cached so repeated transforms at one
// size (the common case in sweeps and benchmarks) skip the trig setup.
struct TwiddleTable {
    int n = 0;
    std::vector<double> cos_t;
    std::vector<double> sin_t;
};

const TwiddleTable& twiddles(int n) {
    thread_local TwiddleTable table;
    if (table.n != n) {
        table.n = n;
        table.cos_t.resize(n);
        table.sin_t.resize(n);
        for (int m = 0; m < n; ++m) {
            const double ang = 2.0 * std::numbers::pi * m / n;
            table.cos_t[m] = std::cos(ang);
            table.sin_t[m] = std::sin(ang);
        }
    }
    return table;
}

}  // namespace

std::vector<std::complex<double>> dft(std::span<const double> signal) {
    const int n = static_cast<int>(signal.size());
    if (n < 1) throw std::invalid_argument("dft needs at least one sample");

    if (is_pow2(signal.size())) {
        std::vector<std::complex<double>> a(signal.begin(), signal.end());
        fft_pow2(a, -1);
        return a;
    }

    const TwiddleTable& tw = twiddles(n);
    std::vector<std::complex<double>> out(n);
    for (int k = 0; k < n; ++k) {
        double re = 0.0;
        double im = 0.0;
        int idx = 0;  // (k*m) mod n, advanced incrementally
        for (int m = 0; m < n; ++m) {
            re += signal[m] * tw.cos_t[idx];
            im -= signal[m] * tw.sin_t[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = {re, im};
    }
    return out;
}

std::vector<std::complex<double>> idft(
    std::span<const std::complex<double>> spectrum) {
    const int n = static_cast<int>(spectrum.size());
    if (n < 1) throw std::invalid_argument("idft needs at least one coefficient");

    if (is_pow2(spectrum.size())) {
        std::vector<std::complex<double>> a(spectrum.begin(), spectrum.end());
        fft_pow2(a, +1);
        const double scale = 1.0 / n;
        for (auto& c : a) c *= scale;
        return a;
    }

    const TwiddleTable& tw = twiddles(n);
    std::vector<std::complex<double>> out(n);
    const double scale = 1.0 / n;
    for (int m = 0; m < n; ++m) {
        double re = 0.0;
        double im = 0.0;
        int idx = 0;
        for (int k = 0; k < n; ++k) {
            re += spectrum[k].real() * tw.cos_t[idx] - spectrum[k].imag() * tw.sin_t[idx];
            im += spectrum[k].real() * tw.sin_t[idx] + spectrum[k].imag() * tw.cos_t[idx];
            idx += m;
            if (idx >= n) idx -= n;
        }
        out[m] = {re * scale, im * scale};
    }
    return out;
}

std::vector<double> idft_real(std::span<const std::complex<double>> spectrum) {
    const int n = static_cast<int>(spectrum.size());
    if (n < 1) throw std::invalid_argument("idft needs at least one coefficient");

    if (is_pow2(spectrum.size())) {
        std::vector<std::complex<double>> a(spectrum.begin(), spectrum.end());
        fft_pow2(a, +1);
        std::vector<double> out(n);
        const double scale = 1.0 / n;
        for (int i = 0; i < n; ++i) out[i] = a[i].real() * scale;
        return out;
    }

    // Re(idft) weights k and n-k with the same cosine and opposite sine,
    // for any spectrum; folding the pairs up front halves the inner loop.
    const int pairs = (n - 1) / 2;
    std::vector<double> re_sum(pairs + 1);
    std::vector<double> im_diff(pairs + 1);
    for (int k = 1; k <= pairs; ++k) {
        re_sum[k] = spectrum[k].real() + spectrum[n - k].real();
        im_diff[k] = spectrum[k].imag() - spectrum[n - k].imag();
    }
    const double dc = spectrum[0].real();
    const double nyquist = n % 2 == 0 ? spectrum[n / 2].real() : 0.0;

    const TwiddleTable& tw = twiddles(n);
    std::vector<double> out(n);
    const double scale = 1.0 / n;
    for (int m = 0; m < n; ++m) {
        // two independent accumulator/index chains keep the fp latency off
        // the critical path
        double acc0 = 0.0;
        double acc1 = 0.0;
        const int step = 2 * m >= n ? 2 * m - n : 2 * m;
        int idx0 = m;
        int idx1 = 2 * m >= n ? 2 * m - n : 2 * m;
        int k = 1;
        for (; k + 1 <= pairs; k += 2) {
            acc0 += re_sum[k] * tw.cos_t[idx0] - im_diff[k] * tw.sin_t[idx0];
            acc1 += re_sum[k + 1] * tw.cos_t[idx1] -
                    im_diff[k + 1] * tw.sin_t[idx1];
            idx0 += step;
            if (idx0 >= n) idx0 -= n;
            idx1 += step;
            if (idx1 >= n) idx1 -= n;
        }
        if (k <= pairs)
            acc0 += re_sum[k] * tw.cos_t[idx0] - im_diff[k] * tw.sin_t[idx0];
        const double edge = m % 2 == 0 ? nyquist : -nyquist;
        out[m] = (dc + edge + acc0 + acc1) * scale;
    }
    return out;
}

int max_kept(int n_points, TruncationMode mode) {
    return mode == TruncationMode::one_sided ? n_points : n_points / 2 + 1;
}

FourierDescriptor truncate(const FourierDescriptor& desc, int kept,
                           TruncationMode mode) {
    const int n = desc.n_points();
    if (kept < 1 || kept > max_kept(n, mode))
        throw std::invalid_argument("truncate: kept count out of range for mode");

    FourierDescriptor out = desc;
    out.kept = kept;
    out.mode = mode;
    if (mode == TruncationMode::one_sided) {
        for (int k = kept; k < n; ++k) out.coefficients[k] = {0.0, 0.0};
    } else {
        for (int k = kept; k <= n - kept; ++k) out.coefficients[k] = {0.0, 0.0};
    }
    return out;
}

FourierDescriptor encode_polar(const RadialContour& rc, int kept,
                               TruncationMode mode) {
    FourierDescriptor desc;
    desc.coefficients = dft(rc.rays);
    desc.branch = Branch::polar;
    desc.kept = rc.n_rays();
    return truncate(desc, kept, mode);
}

RadialContour decode_polar(const FourierDescriptor& desc, Point center) {
    if (desc.branch != Branch::polar)
        throw std::invalid_argument("decode_polar needs a polar-branch descriptor");

    RadialContour rc;
    rc.center = center;
    rc.rays = idft_real(desc.coefficients);
    for (double& r : rc.rays) r = std::max(r, kMinRayLength);
    return rc;
}

CartesianDescriptor encode_cartesian(const PointContour& pc, int kept,
                                     TruncationMode mode) {
    const int n = pc.n_points();
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = pc.points[i].x;
        ys[i] = pc.points[i].y;
    }

    CartesianDescriptor out;
    out.reference = pc.reference;
    out.x_branch.coefficients = dft(xs);
    out.x_branch.branch = Branch::cartesian_x;
    out.x_branch = truncate(out.x_branch, kept, mode);
    out.y_branch.coefficients = dft(ys);
    out.y_branch.branch = Branch::cartesian_y;
    out.y_branch = truncate(out.y_branch, kept, mode);
    return out;
}

PointContour decode_cartesian(const CartesianDescriptor& desc) {
    if (desc.x_branch.branch != Branch::cartesian_x ||
        desc.y_branch.branch != Branch::cartesian_y)
        throw std::invalid_argument("decode_cartesian needs cartesian-x/-y branches");
    if (desc.x_branch.n_points() != desc.y_branch.n_points() ||
        desc.x_branch.kept != desc.y_branch.kept)
        throw std::invalid_argument("cartesian branches must share N and kept count");

    const auto xs = idft_real(desc.x_branch.coefficients);
    const auto ys = idft_real(desc.y_branch.coefficients);

    PointContour pc;
    pc.reference = desc.reference;
    pc.points.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pc.points[i] = {xs[i], ys[i]};
    return pc;
}

std::vector<Point> absolute_points(const PointContour& pc) {
    std::vector<Point> out(pc.points.size());
    for (std::size_t i = 0; i < pc.points.size(); ++i)
        out[i] = pc.reference + pc.points[i];
    return out;
}

std::vector<double> pack_parameters(const FourierDescriptor& desc) {
    std::vector<double> params(2 * static_cast<std::size_t>(desc.kept));
    for (int k = 0; k < desc.kept; ++k) {
        params[2 * k] = desc.coefficients[k].real();
        params[2 * k + 1] = desc.coefficients[k].imag();
    }
    return params;
}

FourierDescriptor with_parameters(const FourierDescriptor& like,
                                  std::span<const double> params) {
    if (params.size() != 2 * static_cast<std::size_t>(like.kept))
        throw std::invalid_argument("with_parameters: expected 2*kept parameters");

    const int n = like.n_points();
    FourierDescriptor out = like;
    std::fill(out.coefficients.begin(), out.coefficients.end(),
              std::complex<double>{0.0, 0.0});
    for (int k = 0; k < like.kept; ++k)
        out.coefficients[k] = {params[2 * k], params[2 * k + 1]};
    if (like.mode == TruncationMode::symmetric) {
        // restore conjugate partners that fall outside the free range
        for (int k = 1; k < like.kept; ++k)
            if (n - k > like.kept - 1)
                out.coefficients[n - k] = std::conj(out.coefficients[k]);
    }
    return out;
}

}  // namespace contourfd

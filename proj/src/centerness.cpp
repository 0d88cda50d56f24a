#include "contourfd/centerness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contourfd {

double polar_centerness(std::span<const double> rays) {
    if (rays.empty())
        throw std::invalid_argument("polar_centerness of an empty ray list");
    const auto [mn, mx] = std::minmax_element(rays.begin(), rays.end());
    if (*mn <= 0.0)
        throw std::invalid_argument("polar_centerness needs positive ray lengths");
    return std::sqrt(*mn / *mx);
}

double normalized_centerness(double pc_i, double pc_max) {
    if (pc_max <= 0.0)
        throw std::invalid_argument("normalized_centerness: degenerate instance, pc_max <= 0");
    return std::min(pc_i / pc_max, 1.0);
}

double gaussian_centerness(double m, double n, const MaskStats& stats,
                           double alpha) {
    if (stats.sigma_x <= 0.0 || stats.sigma_y <= 0.0)
        throw std::invalid_argument("gaussian_centerness needs positive sigmas");
    if (alpha <= 0.0)
        throw std::invalid_argument("gaussian_centerness needs alpha > 0");
    const double dx = (m - stats.mu_x) / stats.sigma_x;
    const double dy = (n - stats.mu_y) / stats.sigma_y;
    return std::exp(-alpha * dx * dx) * std::exp(-alpha * dy * dy);
}

MaskStats mask_stats(const Polygon& poly, int resolution) {
    validate(poly);
    if (resolution < 2)
        throw std::invalid_argument("mask_stats needs resolution >= 2");

    RasterGrid grid{bounding_box(poly), resolution, resolution};
    const auto mask = rasterize(poly, grid);

    const double cw = grid.cell_width();
    const double ch = grid.cell_height();
    std::size_t count = 0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
    for (int iy = 0; iy < grid.height; ++iy) {
        const double yc = grid.box.y_min + (iy + 0.5) * ch;
        const std::uint8_t* row = mask.data() + static_cast<std::size_t>(iy) * grid.width;
        for (int ix = 0; ix < grid.width; ++ix) {
            if (!row[ix]) continue;
            const double xc = grid.box.x_min + (ix + 0.5) * cw;
            ++count;
            sx += xc;
            sy += yc;
            sxx += xc * xc;
            syy += yc * yc;
        }
    }
    if (count == 0)
        throw std::runtime_error("mask_stats: polygon rasterizes to an empty mask");

    MaskStats stats;
    stats.mu_x = sx / count;
    stats.mu_y = sy / count;
    stats.sigma_x = std::sqrt(std::max(sxx / count - stats.mu_x * stats.mu_x, 0.0));
    stats.sigma_y = std::sqrt(std::max(syy / count - stats.mu_y * stats.mu_y, 0.0));
    return stats;
}

}  // namespace contourfd

#include "contourfd/evalcurve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "contourfd/radial.hpp"

namespace contourfd {
namespace {

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double pos = q * (static_cast<double>(values.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

double mean(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

struct InstanceSweep {
    std::vector<double> ious;
    std::vector<double> ray_errors;
};

InstanceSweep sweep_instance(const Polygon& shape, std::span<const int> ks,
                             const CurveOptions& opts) {
    const Point center = centroid(shape);
    const RadialContour rc = extract_radial(shape, center, opts.n_points);
    const FourierDescriptor full =
        encode_polar(rc, max_kept(opts.n_points, opts.mode), opts.mode);

    InstanceSweep sweep;
    sweep.ious.reserve(ks.size());
    sweep.ray_errors.reserve(ks.size());
    for (int k : ks) {
        const RadialContour decoded =
            decode_polar(truncate(full, k, opts.mode), center);
        sweep.ious.push_back(
            polygon_iou(shape, radial_to_polygon(decoded), opts.resolution));
        double sq = 0.0;
        for (int i = 0; i < rc.n_rays(); ++i) {
            const double d = decoded.rays[i] - rc.rays[i];
            sq += d * d;
        }
        sweep.ray_errors.push_back(std::sqrt(sq));
    }
    return sweep;
}

const char* const kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

void write_svg_polygon(std::ostream& out, const Polygon& poly,
                       const char* color, double stroke) {
    out << "  <polygon fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"" << stroke << "\" points=\"";
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        if (i) out << ' ';
        out << poly.vertices[i].x << ',' << poly.vertices[i].y;
    }
    out << "\"/>\n";
}

}  // namespace

std::vector<int> default_ks() {
    return {1, 2, 3, 4, 6, 9, 12, 18, 24, 30, 36, 45};
}

std::vector<int> valid_ks(std::span<const int> ks, int n, TruncationMode mode) {
    const int limit = max_kept(n, mode);
    std::vector<int> out;
    for (int k : ks)
        if (k >= 1 && k <= limit) out.push_back(k);
    return out;
}

Polygon reconstruct_at(const Polygon& shape, int kept,
                       const CurveOptions& opts) {
    const Point center = centroid(shape);
    const RadialContour rc = extract_radial(shape, center, opts.n_points);
    return radial_to_polygon(
        decode_polar(encode_polar(rc, kept, opts.mode), center));
}

TruncationCurve truncation_curve(const std::vector<Polygon>& shapes,
                                 std::span<const int> ks,
                                 const CurveOptions& opts) {
    for (int k : ks)
        if (k < 1 || k > max_kept(opts.n_points, opts.mode))
            throw std::invalid_argument("coefficient budget " +
                                        std::to_string(k) +
                                        " out of range for this sweep");

    std::vector<std::vector<double>> ious(ks.size());
    std::vector<std::vector<double>> ray_errors(ks.size());
    TruncationCurve curve;
    for (const Polygon& shape : shapes) {
        try {
            InstanceSweep sweep = sweep_instance(shape, ks, opts);
            for (std::size_t i = 0; i < ks.size(); ++i) {
                ious[i].push_back(sweep.ious[i]);
                ray_errors[i].push_back(sweep.ray_errors[i]);
            }
        } catch (const std::exception&) {
            ++curve.skipped;
        }
    }

    curve.points.reserve(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        CurvePoint point;
        point.kept = ks[i];
        point.parameters = 2 * ks[i];
        point.mean_iou = mean(ious[i]);
        point.median_iou = quantile(ious[i], 0.5);
        point.p10_iou = quantile(ious[i], 0.1);
        point.mean_ray_l2 = mean(ray_errors[i]);
        point.n_instances = static_cast<int>(ious[i].size());
        curve.points.push_back(point);
    }
    return curve;
}

void emit_curve_csv(const TruncationCurve& curve, std::ostream& out) {
    out << "parameters,mean_iou,median_iou,p10_iou,n_instances\n";
    out << std::fixed << std::setprecision(6);
    for (const CurvePoint& p : curve.points)
        out << p.parameters << ',' << p.mean_iou << ',' << p.median_iou << ','
            << p.p10_iou << ',' << p.n_instances << '\n';
}

void render_reconstructions(const Polygon& shape, std::span<const int> ks,
                            const CurveOptions& opts,
                            const std::filesystem::path& path) {
    struct Layer {
        Polygon outline;
        std::string label;
        const char* color;
    };

    std::vector<Layer> layers;
    layers.push_back({shape, "source", "#000000"});
    BoundingBox box = bounding_box(shape);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const Polygon recon = reconstruct_at(shape, ks[i], opts);
        const double iou = polygon_iou(shape, recon, opts.resolution);
        char label[48];
        std::snprintf(label, sizeof label, "K=%d IoU=%.3f", ks[i], iou);
        layers.push_back({recon, label,
                          kPalette[i % std::size(kPalette)]});
        box = merge(box, bounding_box(recon));
    }

    const double pad = 0.05 * std::max(box.width(), box.height());
    box = {box.x_min - pad, box.y_min - pad, box.x_max + pad, box.y_max + pad};
    const double extent = std::max(box.width(), box.height());
    const double stroke = 0.004 * extent;
    const double font = 0.035 * extent;

    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\""
        << static_cast<int>(640.0 * box.height() / box.width())
        << "\" viewBox=\"" << box.x_min << ' ' << box.y_min << ' '
        << box.width() << ' ' << box.height() << "\">\n";
    for (const Layer& layer : layers)
        write_svg_polygon(out, layer.outline, layer.color,
                          layer.label == "source" ? 1.5 * stroke : stroke);
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const double y = box.y_min + font * (1.5 + 1.3 * i);
        const double x = box.x_min + font;
        out << "  <line x1=\"" << x << "\" y1=\"" << y - 0.3 * font
            << "\" x2=\"" << x + 1.5 * font << "\" y2=\"" << y - 0.3 * font
            << "\" stroke=\"" << layers[i].color << "\" stroke-width=\""
            << 1.5 * stroke << "\"/>\n";
        out << "  <text x=\"" << x + 2.0 * font << "\" y=\"" << y
            << "\" font-family=\"sans-serif\" font-size=\"" << font
            << "\">" << layers[i].label << "</text>\n";
    }
    out << "</svg>\n";
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

}  // namespace contourfd

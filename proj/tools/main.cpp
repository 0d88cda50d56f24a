#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "contourfd/centerness.hpp"
#include "contourfd/codec.hpp"
#include "contourfd/corpus.hpp"
#include "contourfd/evalcurve.hpp"
#include "contourfd/gradcheck.hpp"
#include "contourfd/io.hpp"
#include "contourfd/losses.hpp"
#include "contourfd/radial.hpp"
#include "contourfd/rng.hpp"

namespace {

using namespace contourfd;

/// Bad flag values that CLI11 cannot catch on its own (cross-flag ranges).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string in;
    std::string out;
    int points = 90;
    int coeffs = 36;
    std::string mode = "symmetric";
    std::string rep = "polar";
    int resolution = 512;
    double alpha = 10.0;
    std::uint64_t seed = 1;
    int seeds = 20;

    std::string family = "random-star";
    std::string category;
    int count = 20;
    int vertices = 24;
    double radius = 100.0;
    double aspect = 0.6;
    double spikiness = 0.5;
};

std::string read_text(const std::string& path) {
    std::ostringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        buffer << in.rdbuf();
    }
    return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

LoadReport load_corpus(const std::string& path) {
    LoadReport report = parse_annotations(read_text(path));
    for (const LoadError& err : report.rejected)
        std::cerr << "skipping record " << err.record_index << " (id "
                  << err.id << "): " << err.reason << '\n';
    return report;
}

TruncationMode mode_of(const Config& cfg) {
    return mode_from_string(cfg.mode);
}

void check_codec_flags(const Config& cfg, TruncationMode mode) {
    if (cfg.points < 4) throw UsageError("--points must be at least 4");
    if (cfg.coeffs < 1 || cfg.coeffs > max_kept(cfg.points, mode))
        throw UsageError("--coeffs must be in [1, " +
                         std::to_string(max_kept(cfg.points, mode)) +
                         "] for these --points/--mode");
    if (cfg.resolution < 64)
        throw UsageError("--resolution must be at least 64");
}

int run_encode(const Config& cfg) {
    const TruncationMode mode = mode_of(cfg);
    check_codec_flags(cfg, mode);
    if (cfg.alpha <= 0.0) throw UsageError("--alpha must be positive");

    const LoadReport corpus = load_corpus(cfg.in);
    DescriptorSet set;
    for (const AnnotatedInstance& inst : corpus.instances) {
        const Point center = centroid(inst.polygon);
        if (cfg.rep == "polar") {
            const RadialContour rc =
                extract_radial(inst.polygon, center, cfg.points);
            PolarInstance out;
            out.id = inst.id;
            out.category = inst.category;
            out.center = center;
            out.descriptor = encode_polar(rc, cfg.coeffs, mode);
            out.polar_centerness = polar_centerness(rc.rays);
            out.gaussian_centerness = gaussian_centerness(
                center.x, center.y, mask_stats(inst.polygon, cfg.resolution),
                cfg.alpha);
            set.polar.push_back(std::move(out));
        } else {
            CartesianInstance out;
            out.id = inst.id;
            out.category = inst.category;
            out.descriptor = encode_cartesian(
                point_contour_from_polygon(inst.polygon, cfg.points),
                cfg.coeffs, mode);
            set.cartesian.push_back(std::move(out));
        }
    }
    write_text(cfg.out, descriptor_set_to_json(set) + "\n");
    return 0;
}

int run_decode(const Config& cfg) {
    const DescriptorSet set = descriptor_set_from_json(read_text(cfg.in));
    std::vector<DecodedPolygon> decoded;
    for (const PolarInstance& inst : set.polar)
        decoded.push_back(
            {inst.id, inst.category,
             radial_to_polygon(decode_polar(inst.descriptor, inst.center))});
    for (const CartesianInstance& inst : set.cartesian)
        decoded.push_back(
            {inst.id, inst.category,
             Polygon{absolute_points(decode_cartesian(inst.descriptor))}});
    write_text(cfg.out, polygons_to_json(decoded) + "\n");
    return 0;
}

int run_curve(const Config& cfg) {
    const TruncationMode mode = mode_of(cfg);
    if (cfg.points < 4) throw UsageError("--points must be at least 4");
    if (cfg.resolution < 64)
        throw UsageError("--resolution must be at least 64");

    const LoadReport corpus = load_corpus(cfg.in);
    std::vector<Polygon> shapes;
    shapes.reserve(corpus.instances.size());
    for (const AnnotatedInstance& inst : corpus.instances)
        shapes.push_back(inst.polygon);

    const CurveOptions opts{cfg.points, mode, cfg.resolution};
    const std::vector<int> defaults = default_ks();
    const std::vector<int> ks = valid_ks(defaults, cfg.points, mode);
    const TruncationCurve curve = truncation_curve(shapes, ks, opts);
    if (curve.skipped)
        std::cerr << "skipped " << curve.skipped
                  << " instance(s) that failed to encode\n";

    std::ostringstream csv;
    emit_curve_csv(curve, csv);
    write_text(cfg.out, csv.str());
    return 0;
}

int run_render(const Config& cfg) {
    const TruncationMode mode = mode_of(cfg);
    check_codec_flags(cfg, mode);

    const LoadReport corpus = load_corpus(cfg.in);
    if (corpus.instances.empty())
        throw std::runtime_error("no usable instances to render");

    std::vector<int> ks = {2, 6, 12, cfg.coeffs};
    ks = valid_ks(ks, cfg.points, mode);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    const CurveOptions opts{cfg.points, mode, cfg.resolution};
    if (cfg.out.ends_with(".svg")) {
        if (corpus.instances.size() != 1)
            throw std::runtime_error(
                "--out names a single .svg but the input has " +
                std::to_string(corpus.instances.size()) +
                " instances; pass a directory instead");
        render_reconstructions(corpus.instances.front().polygon, ks, opts,
                               cfg.out);
        return 0;
    }
    std::filesystem::create_directories(cfg.out);
    for (const AnnotatedInstance& inst : corpus.instances)
        render_reconstructions(
            inst.polygon, ks, opts,
            std::filesystem::path(cfg.out) /
                ("instance_" + std::to_string(inst.id) + ".svg"));
    return 0;
}

int run_gradcheck(const Config& cfg) {
    const TruncationMode mode = mode_of(cfg);
    check_codec_flags(cfg, mode);
    if (cfg.seeds < 1) throw UsageError("--seeds must be at least 1");

    int failures = 0;
    double worst_chamfer = 0.0;
    double worst_iou = 0.0;
    for (int i = 0; i < cfg.seeds; ++i) {
        const DecoderLossCheck res =
            check_decoder_losses(cfg.points, cfg.coeffs, mode, cfg.seed + i);
        worst_chamfer = std::max(worst_chamfer, res.chamfer.max_rel_error);
        worst_iou = std::max(worst_iou, res.polar_iou.max_rel_error);
        if (!res.chamfer.passed)
            std::cerr << "seed " << res.seed << ": chamfer gradient off by "
                      << res.chamfer.max_rel_error << " at parameter "
                      << res.chamfer.worst_index << '\n';
        if (!res.polar_iou.passed)
            std::cerr << "seed " << res.seed << ": polar-iou gradient off by "
                      << res.polar_iou.max_rel_error << " at parameter "
                      << res.polar_iou.worst_index << '\n';
        failures += !res.chamfer.passed || !res.polar_iou.passed;
    }

    std::printf("gradcheck: %d seed(s), N=%d, K=%d, %s truncation\n",
                cfg.seeds, cfg.points, cfg.coeffs, cfg.mode.c_str());
    std::printf("  chamfer    max relative error %.3e\n", worst_chamfer);
    std::printf("  polar-iou  max relative error %.3e\n", worst_iou);
    std::printf("%s\n", failures == 0 ? "PASS" : "FAIL");
    return failures == 0 ? 0 : 3;
}

template <class T>
void do_not_optimize(const T& value) {
    asm volatile("" : : "g"(&value) : "memory");
}

template <class F>
double ops_per_second(F&& op) {
    using clock = std::chrono::steady_clock;
    op();
    long iters = 1;
    for (;;) {
        const auto start = clock::now();
        for (long i = 0; i < iters; ++i) op();
        const double seconds =
            std::chrono::duration<double>(clock::now() - start).count();
        if (seconds >= 0.2 || iters >= (1L << 22))
            return static_cast<double>(iters) / seconds;
        iters *= 4;
    }
}

int run_bench(const Config&) {
    std::printf("%5s  %-12s %12s %14s\n", "N", "op", "ns/op", "ops/s");
    double decode_90 = 0.0;
    for (const int n : {32, 90, 256}) {
        Rng rng(7);
        std::vector<double> rays(n);
        for (double& r : rays) r = rng.uniform(20.0, 120.0);
        const std::vector<std::complex<double>> spectrum = dft(rays);
        FourierDescriptor desc;
        desc.coefficients = spectrum;
        desc.kept = max_kept(n, TruncationMode::symmetric);
        desc.mode = TruncationMode::symmetric;

        const auto report = [&](const char* op, double ops) {
            std::printf("%5d  %-12s %12.1f %14.0f\n", n, op, 1e9 / ops, ops);
        };
        report("dft", ops_per_second([&] { do_not_optimize(dft(rays)); }));
        report("idft", ops_per_second([&] { do_not_optimize(idft(spectrum)); }));
        const double decode = ops_per_second(
            [&] { do_not_optimize(decode_polar(desc, {0.0, 0.0})); });
        report("decode_polar", decode);
        if (n == 90) decode_90 = decode;
    }
    std::printf("polar decode at N=90: %.0f ops/s (target 100000): %s\n",
                decode_90, decode_90 >= 1e5 ? "PASS" : "FAIL");
    return 0;
}

int run_gen(const Config& cfg) {
    ShapeSpec spec;
    try {
        spec.family = family_from_string(cfg.family);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (cfg.vertices < 3) throw UsageError("--vertices must be at least 3");
    if (cfg.radius <= 0.0) throw UsageError("--radius must be positive");
    if (cfg.count < 0) throw UsageError("--count must be non-negative");
    if (cfg.aspect <= 0.0) throw UsageError("--aspect must be positive");
    if (cfg.spikiness < 0.0 || cfg.spikiness > 0.95)
        throw UsageError("--spikiness must be in [0, 0.95]");

    spec.radius = cfg.radius;
    spec.aspect = cfg.aspect;
    spec.spikiness = cfg.spikiness;
    spec.vertices = cfg.vertices;

    const std::vector<Polygon> shapes = generate(spec, cfg.count, cfg.seed);
    const std::string category =
        cfg.category.empty() ? cfg.family : cfg.category;
    write_text(cfg.out, annotations_to_json(shapes, category) + "\n");
    return 0;
}

template <class F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Contour Fourier codec: encode instance masks as truncated Fourier "
        "descriptors, decode them back to polygons, and measure what the "
        "truncation costs."};
    app.require_subcommand(1);

    Config cfg;
    const auto in_opt = [&](CLI::App* cmd, const char* what) {
        cmd->add_option("--in", cfg.in, what)->required();
    };
    const auto out_opt = [&](CLI::App* cmd, const char* what) {
        cmd->add_option("--out", cfg.out, what)->required();
    };
    const auto points_opt = [&](CLI::App* cmd) {
        cmd->add_option("--points", cfg.points, "Contour sample count N")
            ->capture_default_str();
    };
    const auto coeffs_opt = [&](CLI::App* cmd) {
        cmd->add_option("--coeffs", cfg.coeffs, "Kept coefficient count K")
            ->capture_default_str();
    };
    const auto mode_opt = [&](CLI::App* cmd) {
        cmd->add_option("--mode", cfg.mode, "Truncation mode")
            ->check(CLI::IsMember({"symmetric", "one-sided"}))
            ->capture_default_str();
    };
    const auto resolution_opt = [&](CLI::App* cmd) {
        cmd->add_option("--resolution", cfg.resolution,
                        "Raster grid resolution")
            ->capture_default_str();
    };

    CLI::App* enc = app.add_subcommand(
        "encode", "Encode annotated masks as Fourier descriptors");
    in_opt(enc, "Annotation JSON (- for stdin)");
    out_opt(enc, "Descriptor JSON (- for stdout)");
    points_opt(enc);
    coeffs_opt(enc);
    mode_opt(enc);
    enc->add_option("--rep", cfg.rep, "Contour representation")
        ->check(CLI::IsMember({"polar", "cartesian"}))
        ->capture_default_str();
    resolution_opt(enc);
    enc->add_option("--alpha", cfg.alpha, "Gaussian centerness decay")
        ->capture_default_str();

    CLI::App* dec = app.add_subcommand(
        "decode", "Decode Fourier descriptors back to polygons");
    in_opt(dec, "Descriptor JSON (- for stdin)");
    out_opt(dec, "Polygon JSON (- for stdout)");

    CLI::App* curve = app.add_subcommand(
        "curve", "Sweep kept-coefficient budgets and report IoU statistics");
    in_opt(curve, "Annotation JSON (- for stdin)");
    out_opt(curve, "CSV output (- for stdout)");
    points_opt(curve);
    mode_opt(curve);
    resolution_opt(curve);

    CLI::App* render = app.add_subcommand(
        "render", "Render reconstruction overlays (budgets 2, 6, 12 and "
                  "--coeffs) as SVG");
    in_opt(render, "Annotation JSON (- for stdin)");
    out_opt(render, "Output directory, or a .svg path for single-instance "
                    "input");
    points_opt(render);
    coeffs_opt(render);
    mode_opt(render);
    resolution_opt(render);

    CLI::App* grad = app.add_subcommand(
        "gradcheck", "Compare analytic decoder-loss gradients against "
                     "central differences");
    points_opt(grad);
    coeffs_opt(grad);
    mode_opt(grad);
    grad->add_option("--seed", cfg.seed, "First seed")->capture_default_str();
    grad->add_option("--seeds", cfg.seeds, "Number of seeded runs")
        ->capture_default_str();

    CLI::App* bench = app.add_subcommand(
        "bench", "Measure transform and decode throughput");

    CLI::App* gen = app.add_subcommand(
        "gen", "Generate a synthetic shape corpus as annotation JSON");
    out_opt(gen, "Annotation JSON (- for stdout)");
    gen->add_option("--family", cfg.family, "Shape family")
        ->check(CLI::IsMember({"circle", "ellipse", "regular", "star",
                               "convex", "random-star"}))
        ->capture_default_str();
    gen->add_option("--count", cfg.count, "Number of shapes")
        ->capture_default_str();
    gen->add_option("--vertices", cfg.vertices, "Corner/sample count")
        ->capture_default_str();
    gen->add_option("--radius", cfg.radius, "Nominal radius")
        ->capture_default_str();
    gen->add_option("--aspect", cfg.aspect, "Ellipse minor/major ratio")
        ->capture_default_str();
    gen->add_option("--spikiness", cfg.spikiness,
                    "Radius spread fraction for star families")
        ->capture_default_str();
    gen->add_option("--seed", cfg.seed, "Generator seed")
        ->capture_default_str();
    gen->add_option("--category", cfg.category,
                    "Category label (defaults to the family name)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (enc->parsed()) return guarded([&] { return run_encode(cfg); });
    if (dec->parsed()) return guarded([&] { return run_decode(cfg); });
    if (curve->parsed()) return guarded([&] { return run_curve(cfg); });
    if (render->parsed()) return guarded([&] { return run_render(cfg); });
    if (grad->parsed()) return guarded([&] { return run_gradcheck(cfg); });
    if (bench->parsed()) return guarded([&] { return run_bench(cfg); });
    if (gen->parsed()) return guarded([&] { return run_gen(cfg); });
    return 1;
}

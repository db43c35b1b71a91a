// Command-line surface: encode, stretch, reconstruct, evaluate, synth.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "panolayout/io.hpp"
#include "panolayout/metrics.hpp"
#include "panolayout/postprocess.hpp"
#include "panolayout/stretch.hpp"
#include "panolayout/synthetic.hpp"
#include "panolayout/viz.hpp"

namespace pl = panolayout;
namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
    int width = 1024;
    int height = 512;
    double decay = pl::kDefaultCornerDecay;
    std::uint64_t seed = 0;

    pl::ImageGrid grid() const { return {width, height}; }
};

int run_encode(const std::string& annotation_path, const std::string& out_path, bool binary,
               const GlobalOpts& g) {
    const pl::CornerAnnotation ann = pl::read_annotation_file(annotation_path, g.grid());
    const pl::BoundarySignals sig = pl::annotation_to_signals(ann, g.decay);
    pl::write_signals_file(out_path, sig, g.decay, "encode " + annotation_path, binary);
    return 0;
}

int run_stretch(const std::string& image_path, const std::string& out_path,
                const std::string& layout_path, const std::string& layout_out,
                std::optional<double> kx, std::optional<double> kz, bool random,
                const GlobalOpts& g) {
    pl::StretchParams k;
    if (random) {
        pl::Rng rng(g.seed);
        k = pl::sample_stretch(rng);
        std::cout << "sampled kx " << k.kx << " kz " << k.kz << "\n";
    } else {
        if (!kx || !kz) throw pl::DomainError("either --random or both --kx and --kz required");
        k = {*kx, *kz};
    }
    k.validate();

    const pl::PanoImage img = pl::read_ppm(image_path);
    img.require_panorama();
    pl::write_ppm(pl::stretch_image(img, k), out_path);

    if (!layout_path.empty()) {
        if (layout_out.empty()) {
            throw pl::DomainError("--layout-out is required when --layout is given");
        }
        const pl::ManhattanLayout layout = pl::read_layout_file(layout_path);
        pl::write_layout_file(layout_out, pl::stretch_layout(layout, k));
    }
    return 0;
}

int run_reconstruct(const std::string& signals_path, const std::string& out_path,
                    const std::string& mode_name, double camera_height,
                    const std::string& overlay_path, const std::string& floorplan_path,
                    const std::string& image_path, const GlobalOpts& g) {
    const pl::SignalsDocument doc = pl::read_signals_file(signals_path);
    const pl::ReconstructMode mode =
        mode_name == "cuboid" ? pl::ReconstructMode::kCuboid : pl::ReconstructMode::kGeneral;
    const pl::ReconstructResult res = pl::reconstruct(doc.signals, mode, camera_height);
    pl::write_layout_file(out_path, res.layout);
    std::cout << "corners " << res.layout.floor_polygon.size() << "\n";
    std::cout << "ceiling_height " << res.layout.ceiling_height << "\n";
    std::cout << "rotation_rad " << res.rotation << "\n";

    if (!overlay_path.empty()) {
        const pl::ImageGrid grid{doc.signals.width(), doc.signals.width() / 2};
        pl::PanoImage bg;
        const pl::PanoImage* bg_ptr = nullptr;
        if (!image_path.empty()) {
            bg = pl::read_ppm(image_path);
            bg_ptr = &bg;
        }
        pl::write_ppm(pl::render_overlay(doc.signals, grid, res.peaks, bg_ptr), overlay_path);
    }
    if (!floorplan_path.empty()) {
        pl::write_ppm(pl::render_floorplan(res.layout), floorplan_path);
    }
    (void)g;
    return 0;
}

// Layout for either side of the comparison: read directly or reconstruct
// from signals; signals are kept when present so pixel error can use them.
struct EvalSide {
    pl::ManhattanLayout layout;
    std::optional<pl::BoundarySignals> signals;
};

EvalSide load_eval_side(const std::string& path, const std::string& mode_name,
                        double camera_height) {
    EvalSide side;
    switch (pl::sniff_file_kind(path)) {
        case pl::FileKind::kLayout:
            side.layout = pl::read_layout_file(path);
            break;
        case pl::FileKind::kSignals: {
            const pl::SignalsDocument doc = pl::read_signals_file(path);
            const pl::ReconstructMode mode = mode_name == "cuboid"
                                                 ? pl::ReconstructMode::kCuboid
                                                 : pl::ReconstructMode::kGeneral;
            side.layout = pl::reconstruct(doc.signals, mode, camera_height).layout;
            side.signals = doc.signals;
            break;
        }
        default:
            throw pl::ParseError(path + " is neither a layout nor a signals file");
    }
    return side;
}

int run_evaluate(const std::string& pred_path, const std::string& gt_path,
                 const std::string& mode_name, double camera_height, const GlobalOpts& g) {
    const EvalSide pred = load_eval_side(pred_path, mode_name, camera_height);
    const EvalSide gt = load_eval_side(gt_path, mode_name, camera_height);
    const pl::ImageGrid grid = g.grid();

    pl::MetricsReport report;
    report.iou_3d = pl::iou_3d(pred.layout, gt.layout);
    try {
        report.corner_error = pl::corner_error(pred.layout, gt.layout, grid);
    } catch (const pl::IncomparableLayoutsError& e) {
        std::cerr << "corner error unavailable: " << e.what() << "\n";
    }
    const pl::BoundarySignals pred_sig =
        pred.signals ? *pred.signals : pl::render_signals(pred.layout, grid, 0.0, g.decay);
    const pl::BoundarySignals gt_sig =
        gt.signals ? *gt.signals : pl::render_signals(gt.layout, grid, 0.0, g.decay);
    report.pixel_error = pl::pixel_error(pred_sig, gt_sig, grid);

    std::printf("iou_3d %.9f\n", report.iou_3d);
    if (report.corner_error) {
        std::printf("corner_error %.9f\n", *report.corner_error);
    } else {
        std::printf("corner_error n/a\n");
    }
    std::printf("pixel_error %.9f\n", *report.pixel_error);
    return 0;
}

int run_synth(int corners, int count, const std::string& out_dir, const pl::RoomSpec& base_spec,
              double noise_sigma, bool binary, const GlobalOpts& g) {
    pl::RoomSpec spec = base_spec;
    spec.corner_count = corners;
    spec.validate();
    fs::create_directories(out_dir);
    pl::Rng rng(g.seed);
    const pl::ImageGrid grid = g.grid();

    for (int i = 0; i < count; ++i) {
        const pl::ManhattanLayout room = pl::generate_room(spec, rng);
        const pl::BoundarySignals sig =
            noise_sigma > 0.0 ? pl::generate_noisy_signals(room, grid, noise_sigma, rng, g.decay)
                              : pl::render_signals(room, grid, 0.0, g.decay);

        // exact sub-pixel corner annotation derived from the room geometry
        pl::CornerAnnotation ann;
        ann.grid = grid;
        for (const double u : pl::corner_longitudes(room)) {
            const double r = pl::wall_distance(room, u);
            const double ceil_v = std::atan2(room.ceiling_plane_y(), r);
            const double floor_v = std::atan2(room.floor_plane_y(), r);
            pl::CornerAnnotation::Corner c;
            c.column = pl::uv_to_pixel({u, 0.0}, grid).col;
            c.ceiling_row = pl::uv_to_pixel({0.0, ceil_v}, grid).row;
            c.floor_row = pl::uv_to_pixel({0.0, floor_v}, grid).row;
            ann.corners.push_back(c);
        }
        // store corners in increasing-column order (single wrap allowed)
        std::sort(ann.corners.begin(), ann.corners.end(),
                  [](const auto& a, const auto& b) { return a.column < b.column; });

        char stem[32];
        std::snprintf(stem, sizeof(stem), "room_%04d", i);
        const fs::path base = fs::path(out_dir) / stem;
        pl::write_layout_file(base.string() + ".layout", room);
        pl::write_signals_file(base.string() + ".signals", sig, g.decay,
                               "synth corners=" + std::to_string(corners), binary);
        pl::write_annotation_file(base.string() + ".annotation", ann);
    }
    std::cout << "wrote " << count << " room triples to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D room-layout toolkit for equirectangular panoramas"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--width", g.width, "panorama width in columns");
    app.add_option("--height", g.height, "panorama height in rows");
    app.add_option("--c", g.decay, "corner-encoding decay constant")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
    app.add_option("--seed", g.seed, "random seed");

    // encode
    auto* enc = app.add_subcommand("encode", "corner annotation -> boundary signals");
    std::string enc_annotation, enc_out;
    enc->add_option("annotation", enc_annotation, "annotation file")->required();
    enc->add_option("-o,--out", enc_out, "output signals file")->required();
    bool enc_binary = false;
    enc->add_flag("--binary", enc_binary, "raw float64 signal arrays instead of text");

    // stretch
    auto* str = app.add_subcommand("stretch", "anisotropic panorama stretch");
    std::string str_image, str_out, str_layout, str_layout_out;
    std::optional<double> str_kx, str_kz;
    bool str_random = false;
    str->add_option("image", str_image, "input panorama (PPM)")->required();
    str->add_option("-o,--out", str_out, "output panorama (PPM)")->required();
    str->add_option("--layout", str_layout, "layout file stretched alongside the image");
    str->add_option("--layout-out", str_layout_out, "output layout file");
    str->add_option("--kx", str_kx, "scale along x");
    str->add_option("--kz", str_kz, "scale along z");
    str->add_flag("--random", str_random, "sample factors from the training policy");

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "boundary signals -> 3D layout");
    std::string rec_signals, rec_out, rec_mode = "general";
    std::string rec_overlay, rec_floorplan, rec_image;
    double rec_camera = pl::kDefaultCameraHeight;
    rec->add_option("signals", rec_signals, "input signals file")->required();
    rec->add_option("-o,--out", rec_out, "output layout file")->required();
    rec->add_option("--mode", rec_mode, "general or cuboid")
        ->check(CLI::IsMember({"general", "cuboid"}));
    rec->add_option("--camera-height", rec_camera, "camera height in meters");
    rec->add_option("--viz-overlay", rec_overlay, "write a boundary overlay image");
    rec->add_option("--viz-floorplan", rec_floorplan, "write a top-down floor plan image");
    rec->add_option("--image", rec_image, "background panorama for the overlay");

    // evaluate
    auto* eva = app.add_subcommand("evaluate", "metrics for a prediction / ground-truth pair");
    std::string eva_pred, eva_gt, eva_mode = "general";
    double eva_camera = pl::kDefaultCameraHeight;
    eva->add_option("--pred", eva_pred, "predicted layout or signals file")->required();
    eva->add_option("--gt", eva_gt, "ground-truth layout or signals file")->required();
    eva->add_option("--mode", eva_mode, "reconstruction mode for signals inputs")
        ->check(CLI::IsMember({"general", "cuboid"}));
    eva->add_option("--camera-height", eva_camera, "camera height in meters");

    // synth
    auto* syn = app.add_subcommand("synth", "generate synthetic room triples");
    int syn_corners = 4, syn_count = 1;
    std::string syn_out_dir;
    pl::RoomSpec syn_spec;
    double syn_noise = 0.0;
    syn->add_option("--corners", syn_corners, "corner count (4, 6, 8, 10, 12)");
    syn->add_option("--count", syn_count, "number of rooms")->check(CLI::PositiveNumber);
    syn->add_option("--out-dir", syn_out_dir, "output directory")->required();
    syn->add_option("--min-extent", syn_spec.min_half_extent, "min half extent, meters");
    syn->add_option("--max-extent", syn_spec.max_half_extent, "max half extent, meters");
    syn->add_option("--min-height", syn_spec.min_ceiling_height, "min ceiling height, meters");
    syn->add_option("--max-height", syn_spec.max_ceiling_height, "max ceiling height, meters");
    syn->add_option("--jitter", syn_spec.camera_jitter, "camera jitter, meters");
    syn->add_option("--camera-height", syn_spec.camera_height, "camera height, meters");
    syn->add_option("--noise-sigma", syn_noise, "boundary noise sigma, radians");
    bool syn_binary = false;
    syn->add_flag("--binary", syn_binary, "raw float64 signal arrays instead of text");

    CLI11_PARSE(app, argc, argv);

    try {
        g.grid().validate();
        if (enc->parsed()) return run_encode(enc_annotation, enc_out, enc_binary, g);
        if (str->parsed()) {
            return run_stretch(str_image, str_out, str_layout, str_layout_out, str_kx, str_kz,
                               str_random, g);
        }
        if (rec->parsed()) {
            return run_reconstruct(rec_signals, rec_out, rec_mode, rec_camera, rec_overlay,
                                   rec_floorplan, rec_image, g);
        }
        if (eva->parsed()) return run_evaluate(eva_pred, eva_gt, eva_mode, eva_camera, g);
        if (syn->parsed()) return run_synth(syn_corners, syn_count, syn_out_dir, syn_spec,
                                            syn_noise, syn_binary, g);
    } catch (const pl::ReconstructionError& e) {
        std::cerr << "error [" << e.stage() << "]: " << e.what() << "\n";
        return 1;
    } catch (const pl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

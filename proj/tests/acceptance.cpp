// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion.
//
// Build:  cmake --build build --target acceptance
// Run:    build/tests/acceptance

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "panolayout/metrics.hpp"
#include "panolayout/postprocess.hpp"
#include "panolayout/stretch.hpp"
#include "panolayout/synthetic.hpp"

using namespace panolayout;
using Clock = std::chrono::steady_clock;

namespace {

const ImageGrid kGrid{1024, 512};

struct Criterion {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<Criterion> g_results;

void report(const std::string& name, bool passed, const std::string& detail) {
    std::printf("[%2zu] %-34s %s  (%s)\n", g_results.size() + 1, name.c_str(),
                passed ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    g_results.push_back({name, passed, detail});
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. stretch inverse property
// ---------------------------------------------------------------------------
void criterion_stretch_inverse() {
    const auto t0 = Clock::now();
    Rng rng(1001);
    double worst = 0.0;
    const double v_limit = 85.0 * kPi / 180.0;
    for (int i = 0; i < 10000; ++i) {
        const Uv uv{rng.uniform(-kPi, kPi), rng.uniform(-v_limit, v_limit)};
        const StretchParams k{rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
        const Uv round = stretch_uv_forward(stretch_uv_inverse(uv, k), k);
        worst = std::max(worst, std::abs(normalize_longitude(round.u - uv.u)));
        worst = std::max(worst, std::abs(round.v - uv.v));
    }
    const double elapsed = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max deviation %.3g rad, %.2f s", worst, elapsed);
    report("stretch inverse property", worst < 1e-9 && elapsed < 1.0, detail);
}

// ---------------------------------------------------------------------------
// 2. stretch image identity + round-trip PSNR
// ---------------------------------------------------------------------------
PanoImage gradient_image(int width) {
    PanoImage img = PanoImage::create(width, width / 2);
    const ImageGrid grid{width, width / 2};
    for (int row = 0; row < img.height; ++row) {
        for (int col = 0; col < img.width; ++col) {
            const Vec3 d = uv_to_dir(pixel_to_uv(col, row, grid));
            img.set(col, row,
                    {static_cast<std::uint8_t>(127.5 * (1.0 + d.x)),
                     static_cast<std::uint8_t>(127.5 * (1.0 + d.y)),
                     static_cast<std::uint8_t>(127.5 * (1.0 + d.z))});
        }
    }
    return img;
}

void criterion_stretch_image() {
    // identity warp on a textured image
    Rng rng(1002);
    PanoImage noisy = PanoImage::create(256, 128);
    for (auto& b : noisy.pixels) b = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
    const PanoImage same = stretch_image(noisy, {1.0, 1.0});
    int max_step = 0;
    for (std::size_t i = 0; i < noisy.pixels.size(); ++i) {
        max_step = std::max(max_step, std::abs(int(noisy.pixels[i]) - int(same.pixels[i])));
    }

    // round trip on the smooth gradient
    const PanoImage smooth = gradient_image(512);
    const StretchParams k{1.7, 1.3};
    const PanoImage back = stretch_image(stretch_image(smooth, k), k.inverse());
    const int skip = static_cast<int>(smooth.height * 0.05);
    double sq = 0.0;
    std::size_t count = 0;
    for (int row = skip; row < smooth.height - skip; ++row) {
        for (int col = 0; col < smooth.width; ++col) {
            for (int ch = 0; ch < 3; ++ch) {
                const double d = double(smooth.at(col, row, ch)) - double(back.at(col, row, ch));
                sq += d * d;
                ++count;
            }
        }
    }
    const double psnr = 10.0 * std::log10(255.0 * 255.0 / (sq / count));

    char detail[128];
    std::snprintf(detail, sizeof(detail), "identity max step %d, round-trip PSNR %.1f dB",
                  max_step, psnr);
    report("stretch image identity + PSNR", max_step <= 1 && psnr >= 30.0, detail);
}

// ---------------------------------------------------------------------------
// 3. render/stretch commutation
// ---------------------------------------------------------------------------
void criterion_commutation() {
    // Forward-mapped boundary samples must land on the rendered boundary of
    // the stretched layout; corner columns of the two routes must agree
    // within one column.
    Rng rng(1003);
    RoomSpec spec;
    spec.min_half_extent = 2.5;
    spec.max_half_extent = 4.0;
    spec.camera_jitter = 0.3;
    double worst_v = 0.0;
    int worst_cols = 0;
    for (int trial = 0; trial < 50; ++trial) {
        spec.corner_count = 4 + 2 * (trial % 4);
        const ManhattanLayout room = generate_room(spec, rng);
        const StretchParams k = sample_stretch(rng);
        const BoundarySignals sig = render_signals(room, kGrid);
        const ManhattanLayout stretched = stretch_layout(room, k);
        for (int i = 0; i < kGrid.width; ++i) {
            const double u = pixel_to_uv(i, 0, kGrid).u;
            const Uv cm = stretch_uv_forward({u, sig.ceiling[i]}, k);
            const Uv fm = stretch_uv_forward({u, sig.floor[i]}, k);
            const BoundaryLatitudes expect = boundary_at(stretched, cm.u);
            worst_v = std::max(worst_v, std::abs(cm.v - expect.ceiling_v));
            worst_v = std::max(worst_v, std::abs(fm.v - expect.floor_v));
        }
        // corner columns under the two routes, matched per vertex
        const std::vector<double> src = corner_longitudes(room);
        for (double uv : src) {
            const int via_map = nearest_column(stretch_uv_forward({uv, 0.0}, k).u, kGrid);
            const int direct = nearest_column(std::atan2(k.kz * std::sin(uv),
                                                         k.kx * std::cos(uv)), kGrid);
            const int d = std::abs(via_map - direct);
            worst_cols = std::max(worst_cols, std::min(d, kGrid.width - d));
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max boundary deviation %.3g rad, corner cols off %d",
                  worst_v, worst_cols);
    report("render/stretch commutation", worst_v < 1e-5 && worst_cols <= 1, detail);
}

// ---------------------------------------------------------------------------
// 4. end-to-end oracle on exact signals
// ---------------------------------------------------------------------------
void criterion_end_to_end() {
    const auto t0 = Clock::now();
    Rng rng(1004);

    RoomSpec cuboid_spec;
    cuboid_spec.corner_count = 4;
    double min_iou = 1.0, max_corner = 0.0;
    bool cuboids_ok = true;
    for (int i = 0; i < 200; ++i) {
        const ManhattanLayout room = generate_room(cuboid_spec, rng);
        const BoundarySignals sig = render_signals(room, kGrid);
        const ReconstructResult res = reconstruct(sig, ReconstructMode::kCuboid);
        const double iou = iou_3d(res.layout, room);
        const double cerr = corner_error(res.layout, room, kGrid);
        min_iou = std::min(min_iou, iou);
        max_corner = std::max(max_corner, cerr);
        if (iou < 0.99 || cerr > 0.005) cuboids_ok = false;
    }

    RoomSpec general_spec;
    int general_good = 0;
    double general_min = 1.0;
    for (int i = 0; i < 200; ++i) {
        general_spec.corner_count = 6 + 2 * (i % 3);
        const ManhattanLayout room = generate_room(general_spec, rng);
        const BoundarySignals sig = render_signals(room, kGrid);
        const ReconstructResult res = reconstruct(sig, ReconstructMode::kGeneral);
        const double iou = iou_3d(res.layout, room);
        general_min = std::min(general_min, iou);
        if (iou >= 0.98) ++general_good;
    }
    const double elapsed = seconds_since(t0);

    char detail[192];
    std::snprintf(detail, sizeof(detail),
                  "cuboids: min IoU %.4f, max corner err %.4f%%; general: %d/200 >= 0.98 "
                  "(min %.4f); %.1f s",
                  min_iou, 100.0 * max_corner, general_good, general_min, elapsed);
    report("end-to-end oracle",
           cuboids_ok && general_good >= 198 && elapsed < 60.0, detail);
}

// ---------------------------------------------------------------------------
// 5. noise robustness (calibrated and frozen)
// ---------------------------------------------------------------------------
void criterion_noise_robustness() {
    Rng rng(1005);
    RoomSpec spec;
    spec.corner_count = 4;
    int good = 0;
    for (int i = 0; i < 200; ++i) {
        const ManhattanLayout room = generate_room(spec, rng);
        const BoundarySignals sig = generate_noisy_signals(room, kGrid, 0.005, rng);
        try {
            const ReconstructResult res = reconstruct(sig, ReconstructMode::kCuboid);
            if (iou_3d(res.layout, room) >= 0.95) ++good;
        } catch (const ReconstructionError&) {
            // counts as a failure for this room
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%d/200 rooms at IoU >= 0.95 (need >= 190)", good);
    report("noise robustness sigma=0.005", good >= 190, detail);
}

// ---------------------------------------------------------------------------
// 6. post-processing latency
// ---------------------------------------------------------------------------
void criterion_latency() {
    Rng rng(1006);
    RoomSpec spec;
    spec.corner_count = 8;
    const ManhattanLayout room = generate_room(spec, rng);
    const BoundarySignals sig = render_signals(room, kGrid);

    std::vector<double> times;
    times.reserve(100);
    for (int i = 0; i < 100; ++i) {
        const auto t0 = Clock::now();
        const ReconstructResult res = reconstruct(sig, ReconstructMode::kGeneral);
        times.push_back(seconds_since(t0) * 1000.0);
        if (res.layout.floor_polygon.empty()) return;  // keep the call alive
    }
    std::sort(times.begin(), times.end());
    const double median = times[times.size() / 2];
    char detail[96];
    std::snprintf(detail, sizeof(detail), "median %.2f ms over 100 runs at W=1024", median);
    report("post-processing latency < 20 ms", median < 20.0, detail);
}

// ---------------------------------------------------------------------------
// 7. IoU oracle equivalence
// ---------------------------------------------------------------------------
double grid_sampled_intersection(const std::vector<PlanePoint>& a,
                                 const std::vector<PlanePoint>& b, double step) {
    double lo_x = 1e18, hi_x = -1e18, z_lo = 1e18;
    for (const auto& p : a) {
        lo_x = std::max(-1e18, std::min(lo_x, p.x));
        hi_x = std::max(hi_x, p.x);
        z_lo = std::min(z_lo, p.z);
    }
    double blo_x = 1e18, bhi_x = -1e18;
    for (const auto& p : b) {
        blo_x = std::min(blo_x, p.x);
        bhi_x = std::max(bhi_x, p.x);
        z_lo = std::min(z_lo, p.z);
    }
    lo_x = std::max(lo_x, blo_x);
    hi_x = std::min(hi_x, bhi_x);
    if (lo_x >= hi_x) return 0.0;

    const auto crossings = [](const std::vector<PlanePoint>& poly, double x,
                              std::vector<double>& zs) {
        zs.clear();
        const int n = static_cast<int>(poly.size());
        for (int i = 0; i < n; ++i) {
            const PlanePoint p = poly[i];
            const PlanePoint q = poly[(i + 1) % n];
            if (std::abs(p.z - q.z) > 1e-12) continue;
            if (std::min(p.x, q.x) <= x && x < std::max(p.x, q.x)) zs.push_back(p.z);
        }
        std::sort(zs.begin(), zs.end());
    };

    double cells = 0.0;
    std::vector<double> za, zb;
    const int cols = static_cast<int>(std::floor((hi_x - lo_x) / step));
    for (int i = 0; i < cols; ++i) {
        const double x = lo_x + (i + 0.5) * step;
        crossings(a, x, za);
        crossings(b, x, zb);
        for (std::size_t ia = 0; ia + 1 < za.size(); ia += 2) {
            for (std::size_t ib = 0; ib + 1 < zb.size(); ib += 2) {
                const double lo = std::max(za[ia], zb[ib]);
                const double hi = std::min(za[ia + 1], zb[ib + 1]);
                if (hi <= lo) continue;
                const double first = std::ceil((lo - z_lo) / step - 0.5);
                const double last = std::floor((hi - z_lo) / step - 0.5);
                if (last >= first) cells += last - first + 1.0;
            }
        }
    }
    return cells * step * step;
}

void criterion_iou_oracle() {
    Rng rng(1007);
    RoomSpec spec;
    double worst_rel = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        spec.corner_count = 4 + 2 * (trial % 5);
        const ManhattanLayout a = generate_room(spec, rng);
        spec.corner_count = 4 + 2 * ((trial + 3) % 5);
        const ManhattanLayout b = generate_room(spec, rng);
        const double exact = rectilinear_intersection_area(a.floor_polygon, b.floor_polygon);
        const double sampled = grid_sampled_intersection(a.floor_polygon, b.floor_polygon, 0.001);
        worst_rel = std::max(worst_rel, std::abs(exact - sampled) / exact);
    }

    ManhattanLayout u1, u2;
    u1.floor_polygon = {{0.25, -0.5}, {0.25, 0.5}, {-0.75, 0.5}, {-0.75, -0.5}};
    u1.camera_height = 0.5;
    u1.ceiling_height = 1.0;
    u2 = u1;
    for (auto& p : u2.floor_polygon) p.x += 0.5;
    const double identity_err = std::abs(iou_3d(u1, u1) - 1.0);
    const double offset_err = std::abs(iou_3d(u1, u2) - 1.0 / 3.0);

    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "max rel dev vs 1 mm sampling %.2g; analytic errors %.2g / %.2g", worst_rel,
                  identity_err, offset_err);
    report("IoU oracle equivalence",
           worst_rel < 1e-3 && identity_err < 1e-9 && offset_err < 1e-9, detail);
}

// ---------------------------------------------------------------------------
// 8. rotation recovery
// ---------------------------------------------------------------------------
void criterion_rotation_recovery() {
    Rng rng(1008);
    RoomSpec spec;
    double worst_angle_err = 0.0;
    double worst_iou = 1.0;
    for (int trial = 0; trial < 30; ++trial) {
        spec.corner_count = (trial % 2 == 0) ? 4 : 6;
        const ManhattanLayout room = generate_room(spec, rng);
        const double yaw = (1.0 + 7.0 * rng.uniform()) * kPi / 180.0;  // 1..8 degrees
        const BoundarySignals sig = render_signals(room, kGrid, yaw);
        const ReconstructResult res = reconstruct(sig, ReconstructMode::kGeneral);
        worst_angle_err = std::max(worst_angle_err, std::abs(res.rotation - yaw));
        worst_iou = std::min(worst_iou, iou_3d(res.layout, room));
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max angle error %.3f deg, min IoU %.4f",
                  worst_angle_err * 180.0 / kPi, worst_iou);
    report("rotation recovery", worst_angle_err < 0.2 * kPi / 180.0 && worst_iou >= 0.97,
           detail);
}

// ---------------------------------------------------------------------------
// 9. encoding correctness
// ---------------------------------------------------------------------------
void criterion_encoding() {
    bool closed_form_ok = true;
    const int w = 32;
    for (int c0 = 0; c0 < w && closed_form_ok; ++c0) {
        for (int c1 = 0; c1 < w && closed_form_ok; ++c1) {
            std::vector<int> cols{c0};
            if (c1 != c0) cols.push_back(c1);
            const auto enc = corner_encoding(cols, w, 0.96);
            for (int i = 0; i < w; ++i) {
                int dmin = w;
                for (int c : cols) {
                    const int d = std::abs(i - c);
                    dmin = std::min(dmin, std::min(d, w - d));
                }
                if (enc[i] != std::pow(0.96, dmin)) closed_form_ok = false;
            }
        }
    }

    Rng rng(1009);
    RoomSpec spec;
    double worst_ratio_dev = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        spec.corner_count = 4 + 2 * (trial % 5);
        const ManhattanLayout room = generate_room(spec, rng);
        const BoundarySignals sig = render_signals(room, kGrid);
        const double expected = room.camera_height / (room.ceiling_height - room.camera_height);
        for (int i = 0; i < kGrid.width; ++i) {
            const double ratio = std::tan(sig.floor[i]) / std::tan(-sig.ceiling[i]);
            worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio / expected - 1.0));
        }
    }

    char detail[128];
    std::snprintf(detail, sizeof(detail), "closed form %s, max tan-ratio rel dev %.2g",
                  closed_form_ok ? "exact" : "MISMATCH", worst_ratio_dev);
    report("encoding correctness", closed_form_ok && worst_ratio_dev < 1e-9, detail);
}

// ---------------------------------------------------------------------------
// 10. peak-detection contract
// ---------------------------------------------------------------------------
PeakList brute_force_peaks(const std::vector<double>& s, double window_deg, double threshold) {
    const int w = static_cast<int>(s.size());
    int radius = static_cast<int>(std::lround(w * window_deg / 360.0));
    radius = std::max(1, std::min(radius, w - 1));
    PeakList out;
    for (int i = 0; i < w; ++i) {
        if (!(s[i] > threshold)) continue;
        bool ok = true;
        for (int j = 0; j < w && ok; ++j) {
            if (j == i) continue;
            const int fwd = (j - i + w) % w;
            const int bwd = (i - j + w) % w;
            if (fwd <= radius && !(s[i] >= s[j])) ok = false;
            if (bwd <= radius && !(s[i] > s[j])) ok = false;
        }
        if (ok) out.push_back({i, s[i]});
    }
    return out;
}

void criterion_peak_contract() {
    Rng rng(1010);
    const double levels[] = {0.0, 0.04, 0.05, 0.05, 0.3, 0.3, 0.9, 0.9, 1.0};
    long cases = 0;
    long mismatches = 0;
    for (int w = 1; w <= 64; ++w) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> s(w);
            for (double& v : s) v = levels[rng.uniform_int(0, 8)];
            const PeakList got = detect_peaks(s);
            const PeakList want = brute_force_peaks(s, kPeakWindowDeg, kPeakThreshold);
            ++cases;
            if (got.size() != want.size()) {
                ++mismatches;
                continue;
            }
            for (std::size_t i = 0; i < got.size(); ++i) {
                if (got[i].column != want[i].column) {
                    ++mismatches;
                    break;
                }
            }
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%ld randomized cases, %ld mismatches", cases,
                  mismatches);
    report("peak-detection contract", mismatches == 0, detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite (W=1024 panoramas)\n");
    std::printf("------------------------------------------------------------\n");

    criterion_stretch_inverse();
    criterion_stretch_image();
    criterion_commutation();
    criterion_end_to_end();
    criterion_noise_robustness();
    criterion_latency();
    criterion_iou_oracle();
    criterion_rotation_recovery();
    criterion_encoding();
    criterion_peak_contract();

    int failed = 0;
    for (const Criterion& c : g_results) {
        if (!c.passed) ++failed;
    }
    std::printf("------------------------------------------------------------\n");
    std::printf("%zu criteria, %d failed\n", g_results.size(), failed);
    return failed == 0 ? 0 : 1;
}

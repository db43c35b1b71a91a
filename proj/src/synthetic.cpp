#include "panolayout/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace panolayout {

namespace {

// Margin the camera keeps from every wall *line* (not just segment); this
// makes the room star-shaped around the camera so every wall is visible and
// keeps boundary latitudes away from the poles.
constexpr double kKernelMargin = 0.35;

bool camera_in_kernel(const std::vector<PlanePoint>& poly, double margin) {
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        const PlanePoint a = poly[i];
        const PlanePoint b = poly[(i + 1) % n];
        const PlanePoint d = b - a;
        const double len = length(d);
        if (len <= 0.0) return false;
        // signed distance of the origin from the edge line, positive on the
        // interior (left) side of a CCW polygon
        const double dist = cross(d, PlanePoint{-a.x, -a.z}) / len;
        if (dist < margin) return false;
    }
    return true;
}

bool min_edge_length_ok(const std::vector<PlanePoint>& poly, double min_len) {
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        if (length(poly[(i + 1) % n] - poly[i]) < min_len - 1e-9) return false;
    }
    return true;
}

// Corners closer than the 5-degree peak-suppression window collapse into one
// peak and the room stops being recoverable from its own signals; keep a
// margin above the window.
constexpr double kMinCornerGap = 6.0 * kPi / 180.0;

bool corner_gaps_ok(const std::vector<PlanePoint>& poly, double min_gap) {
    std::vector<double> lons;
    lons.reserve(poly.size());
    for (const PlanePoint& p : poly) lons.push_back(std::atan2(p.z, p.x));
    std::sort(lons.begin(), lons.end());
    const int n = static_cast<int>(lons.size());
    for (int i = 0; i < n; ++i) {
        const double next = (i + 1 < n) ? lons[i + 1] : lons[0] + 2.0 * kPi;
        if (next - lons[i] < min_gap) return false;
    }
    return true;
}

}  // namespace

void RoomSpec::validate() const {
    if (corner_count < 4 || corner_count > 12 || corner_count % 2 != 0) {
        throw DomainError("corner count must be one of 4, 6, 8, 10, 12");
    }
    if (!(min_half_extent > 0.0) || !(max_half_extent >= min_half_extent)) {
        throw DomainError("half-extent range must be positive and ordered");
    }
    if (!(min_ceiling_height > camera_height) || !(max_ceiling_height >= min_ceiling_height)) {
        throw DomainError("ceiling height range must be ordered and exceed the camera height");
    }
    if (!(camera_height > 0.0)) throw DomainError("camera height must be positive");
    if (camera_jitter < 0.0) throw DomainError("camera jitter must be nonnegative");
}

ManhattanLayout generate_room(const RoomSpec& spec, Rng& rng) {
    spec.validate();
    const int notch_count = (spec.corner_count - 4) / 2;

    for (int attempt = 0; attempt < 500; ++attempt) {
        const double hx = rng.uniform(spec.min_half_extent, spec.max_half_extent);
        const double hz = rng.uniform(spec.min_half_extent, spec.max_half_extent);
        const double cx = rng.uniform(-spec.camera_jitter, spec.camera_jitter);
        const double cz = rng.uniform(-spec.camera_jitter, spec.camera_jitter);
        const double x_lo = cx - hx, x_hi = cx + hx;
        const double z_lo = cz - hz, z_hi = cz + hz;

        // which rectangle corners carry a notch: 0=(+x,+z) 1=(-x,+z) 2=(-x,-z) 3=(+x,-z)
        int ids[4] = {0, 1, 2, 3};
        for (int i = 3; i > 0; --i) std::swap(ids[i], ids[rng.uniform_int(0, i)]);
        bool notched[4] = {false, false, false, false};
        for (int i = 0; i < notch_count; ++i) notched[ids[i]] = true;

        double dx[4] = {0, 0, 0, 0}, dz[4] = {0, 0, 0, 0};
        for (int c = 0; c < 4; ++c) {
            if (!notched[c]) continue;
            dx[c] = rng.uniform(kMinWallLength, 0.9 * hx);
            dz[c] = rng.uniform(kMinWallLength, 0.9 * hz);
        }

        std::vector<PlanePoint> poly;
        // walk the rectangle counter-clockwise, splicing notch vertices in
        if (notched[3]) {
            poly.push_back({x_hi, z_lo + dz[3]});
        } else {
            poly.push_back({x_hi, z_lo});
        }
        if (notched[0]) {
            poly.push_back({x_hi, z_hi - dz[0]});
            poly.push_back({x_hi - dx[0], z_hi - dz[0]});
            poly.push_back({x_hi - dx[0], z_hi});
        } else {
            poly.push_back({x_hi, z_hi});
        }
        if (notched[1]) {
            poly.push_back({x_lo + dx[1], z_hi});
            poly.push_back({x_lo + dx[1], z_hi - dz[1]});
            poly.push_back({x_lo, z_hi - dz[1]});
        } else {
            poly.push_back({x_lo, z_hi});
        }
        if (notched[2]) {
            poly.push_back({x_lo, z_lo + dz[2]});
            poly.push_back({x_lo + dx[2], z_lo + dz[2]});
            poly.push_back({x_lo + dx[2], z_lo});
        } else {
            poly.push_back({x_lo, z_lo});
        }
        if (notched[3]) {
            poly.push_back({x_hi - dx[3], z_lo});
            poly.push_back({x_hi - dx[3], z_lo + dz[3]});
        }

        if (!camera_in_kernel(poly, kKernelMargin)) continue;
        if (!min_edge_length_ok(poly, kMinWallLength)) continue;
        if (!corner_gaps_ok(poly, kMinCornerGap)) continue;

        ManhattanLayout layout;
        layout.floor_polygon = std::move(poly);
        layout.camera_height = spec.camera_height;
        layout.ceiling_height = rng.uniform(spec.min_ceiling_height, spec.max_ceiling_height);
        try {
            layout.validate();
        } catch (const ValidationError&) {
            continue;
        }
        return layout;
    }
    throw Error("room generation failed after 500 attempts; relax the spec ranges");
}

BoundarySignals generate_noisy_signals(const ManhattanLayout& layout, const ImageGrid& grid,
                                       double noise_sigma, Rng& rng, double decay) {
    if (noise_sigma < 0.0) throw DomainError("noise sigma must be nonnegative");
    BoundarySignals sig = render_signals(layout, grid, 0.0, decay);
    if (noise_sigma == 0.0) return sig;

    const int w = grid.width;
    constexpr double kVMargin = 1e-3;
    for (int i = 0; i < w; ++i) {
        const double nc = sig.ceiling[i] + noise_sigma * rng.gaussian();
        const double nf = sig.floor[i] + noise_sigma * rng.gaussian();
        sig.ceiling[i] = std::clamp(nc, -kPi / 2.0 + kVMargin, -1e-4);
        sig.floor[i] = std::clamp(nf, 1e-4, kPi / 2.0 - kVMargin);
    }

    // circular Gaussian blur of the corner channel at the same angular scale
    const double sigma_cols = noise_sigma * w / (2.0 * kPi);
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma_cols)));
    std::vector<double> kernel(2 * radius + 1);
    double norm = 0.0;
    for (int d = -radius; d <= radius; ++d) {
        kernel[d + radius] = std::exp(-0.5 * (d / sigma_cols) * (d / sigma_cols));
        norm += kernel[d + radius];
    }
    std::vector<double> blurred(w, 0.0);
    for (int i = 0; i < w; ++i) {
        double acc = 0.0;
        for (int d = -radius; d <= radius; ++d) {
            acc += kernel[d + radius] * sig.corner[((i + d) % w + w) % w];
        }
        blurred[i] = std::clamp(acc / norm, 0.0, 1.0);
    }
    sig.corner = std::move(blurred);
    return sig;
}

}  // namespace panolayout

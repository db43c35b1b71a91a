#include "panolayout/viz.hpp"

#include <algorithm>
#include <cmath>

namespace panolayout {

namespace {

void plot_row(PanoImage& img, int col, double row, Rgb color) {
    const int r = static_cast<int>(std::lround(row));
    for (int d = -1; d <= 1; ++d) {
        const int rr = r + d;
        if (rr >= 0 && rr < img.height) img.set(col, rr, color);
    }
}

}  // namespace

PanoImage render_overlay(const BoundarySignals& signals, const ImageGrid& grid,
                         const PeakList& peaks, const PanoImage* background) {
    grid.validate();
    signals.validate();
    PanoImage canvas;
    if (background != nullptr) {
        background->require_panorama();
        if (background->width != grid.width) {
            throw DomainError("overlay background does not match the grid");
        }
        canvas = *background;
    } else {
        canvas = PanoImage::create(grid.width, grid.height);
        for (auto& b : canvas.pixels) b = 40;
    }

    const Rgb kPeakColor{255, 160, 0};
    for (const Peak& p : peaks) {
        for (int row = 0; row < grid.height; row += 2) {
            canvas.set(p.column, row, kPeakColor);
        }
    }
    for (int col = 0; col < grid.width; ++col) {
        const double ceil_row = uv_to_pixel({0.0, signals.ceiling[col]}, grid).row;
        const double floor_row = uv_to_pixel({0.0, signals.floor[col]}, grid).row;
        plot_row(canvas, col, ceil_row, {0, 220, 0});
        plot_row(canvas, col, floor_row, {60, 120, 255});
    }
    return canvas;
}

PanoImage render_floorplan(const ManhattanLayout& layout, int canvas_px) {
    layout.validate();
    if (canvas_px < 64) throw DomainError("floor plan canvas too small");

    double extent = 0.0;
    for (const PlanePoint& p : layout.floor_polygon) {
        extent = std::max({extent, std::abs(p.x), std::abs(p.z)});
    }
    const double scale = (canvas_px / 2.0 - 8.0) / extent;
    const double mid = canvas_px / 2.0;

    PanoImage img = PanoImage::create(canvas_px, canvas_px);
    for (auto& b : img.pixels) b = 255;

    const auto put = [&](double x, double z, Rgb c) {
        const int px = static_cast<int>(std::lround(mid + x * scale));
        const int pz = static_cast<int>(std::lround(mid - z * scale));
        if (px >= 0 && px < canvas_px && pz >= 0 && pz < canvas_px) img.set(px, pz, c);
    };

    const int n = static_cast<int>(layout.floor_polygon.size());
    for (int i = 0; i < n; ++i) {
        const PlanePoint a = layout.floor_polygon[i];
        const PlanePoint b = layout.floor_polygon[(i + 1) % n];
        const double len = length(b - a);
        const int steps = std::max(2, static_cast<int>(len * scale * 2.0));
        for (int s = 0; s <= steps; ++s) {
            const double t = static_cast<double>(s) / steps;
            const PlanePoint p = a + t * (b - a);
            put(p.x, p.z, {20, 20, 20});
        }
        put(a.x, a.z, {200, 30, 30});
    }
    for (int d = -4; d <= 4; ++d) {
        put(d / scale, 0.0, {200, 30, 30});
        put(0.0, d / scale, {200, 30, 30});
    }
    return img;
}

}  // namespace panolayout

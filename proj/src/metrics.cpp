#include "panolayout/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace panolayout {

namespace {

constexpr double kEps = 1e-12;

struct Rect {
    double x0, x1, z0, z1;
    double area() const { return (x1 - x0) * (z1 - z0); }
};

void require_simple_rectilinear(const std::vector<PlanePoint>& poly) {
    const int n = static_cast<int>(poly.size());
    if (n < 4) throw DomainError("rectilinear polygon needs at least 4 vertices");
    for (int i = 0; i < n; ++i) {
        const PlanePoint a = poly[i];
        const PlanePoint b = poly[(i + 1) % n];
        const bool xe = std::abs(a.z - b.z) <= kEps;
        const bool ze = std::abs(a.x - b.x) <= kEps;
        if (xe == ze) throw DomainError("polygon edge " + std::to_string(i) + " is not axis-aligned");
    }
    const auto overlap1d = [](double lo0, double hi0, double lo1, double hi1) {
        if (lo0 > hi0) std::swap(lo0, hi0);
        if (lo1 > hi1) std::swap(lo1, hi1);
        return std::max(lo0, lo1) <= std::min(hi0, hi1) + kEps;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            const PlanePoint a0 = poly[i], a1 = poly[(i + 1) % n];
            const PlanePoint b0 = poly[j], b1 = poly[(j + 1) % n];
            if (overlap1d(a0.x, a1.x, b0.x, b1.x) && overlap1d(a0.z, a1.z, b0.z, b1.z)) {
                throw DomainError("polygon is not simple (edges " + std::to_string(i) + " and " +
                                  std::to_string(j) + " touch)");
            }
        }
    }
}

// Vertical slab decomposition into disjoint rectangles. Within a slab the
// horizontal edges spanning it alternate outside/inside from below.
std::vector<Rect> decompose(const std::vector<PlanePoint>& poly) {
    const int n = static_cast<int>(poly.size());
    std::vector<double> xs;
    xs.reserve(n);
    for (const PlanePoint& p : poly) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) {
                 return std::abs(a - b) <= kEps;
             }),
             xs.end());

    std::vector<Rect> rects;
    std::vector<double> zs;
    for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
        const double x0 = xs[s];
        const double x1 = xs[s + 1];
        zs.clear();
        for (int i = 0; i < n; ++i) {
            const PlanePoint a = poly[i];
            const PlanePoint b = poly[(i + 1) % n];
            if (std::abs(a.z - b.z) > kEps) continue;  // vertical edge
            if (std::min(a.x, b.x) <= x0 + kEps && std::max(a.x, b.x) >= x1 - kEps) {
                zs.push_back(a.z);
            }
        }
        std::sort(zs.begin(), zs.end());
        for (std::size_t k = 0; k + 1 < zs.size(); k += 2) {
            rects.push_back({x0, x1, zs[k], zs[k + 1]});
        }
    }
    return rects;
}

double rect_overlap(const Rect& a, const Rect& b) {
    const double w = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
    const double h = std::min(a.z1, b.z1) - std::max(a.z0, b.z0);
    return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

struct CornerPixels {
    std::vector<PixelPos> ceiling;
    std::vector<PixelPos> floor;
};

CornerPixels project_corners(const ManhattanLayout& layout, const ImageGrid& grid) {
    CornerPixels out;
    for (const PlanePoint& p : layout.floor_polygon) {
        const Vec3 up{p.x, layout.ceiling_plane_y(), p.z};
        const Vec3 down{p.x, layout.floor_plane_y(), p.z};
        out.ceiling.push_back(uv_to_pixel(dir_to_uv(up), grid));
        out.floor.push_back(uv_to_pixel(dir_to_uv(down), grid));
    }
    return out;
}

double pixel_distance(const PixelPos& a, const PixelPos& b, const ImageGrid& grid) {
    double dc = std::abs(a.col - b.col);
    dc = std::min(dc, grid.width - dc);  // panorama seam wrap
    return std::hypot(dc, a.row - b.row);
}

}  // namespace

double polygon_area(const std::vector<PlanePoint>& polygon) {
    const int n = static_cast<int>(polygon.size());
    double twice = 0.0;
    for (int i = 0; i < n; ++i) {
        twice += cross(polygon[i], polygon[(i + 1) % n]);
    }
    return twice / 2.0;
}

double rectilinear_intersection_area(const std::vector<PlanePoint>& a,
                                     const std::vector<PlanePoint>& b) {
    require_simple_rectilinear(a);
    require_simple_rectilinear(b);
    const std::vector<Rect> ra = decompose(a);
    const std::vector<Rect> rb = decompose(b);
    double area = 0.0;
    for (const Rect& x : ra) {
        for (const Rect& y : rb) {
            area += rect_overlap(x, y);
        }
    }
    return area;
}

double iou_3d(const ManhattanLayout& pred, const ManhattanLayout& gt) {
    if (!(pred.ceiling_height > 0.0) || !(gt.ceiling_height > 0.0)) {
        throw DomainError("layouts need positive room heights");
    }
    const double overlap_y = std::min(pred.floor_plane_y(), gt.floor_plane_y()) -
                             std::max(pred.ceiling_plane_y(), gt.ceiling_plane_y());
    const double inter_area = rectilinear_intersection_area(pred.floor_polygon, gt.floor_polygon);
    const double inter = overlap_y > 0.0 ? overlap_y * inter_area : 0.0;
    const double vol_pred = std::abs(polygon_area(pred.floor_polygon)) * pred.ceiling_height;
    const double vol_gt = std::abs(polygon_area(gt.floor_polygon)) * gt.ceiling_height;
    const double uni = vol_pred + vol_gt - inter;
    if (!(uni > 0.0)) throw DomainError("zero union volume; degenerate layouts");
    return inter / uni;
}

double corner_error(const ManhattanLayout& pred, const ManhattanLayout& gt,
                    const ImageGrid& grid) {
    grid.validate();
    const int n = static_cast<int>(gt.floor_polygon.size());
    if (static_cast<int>(pred.floor_polygon.size()) != n) {
        throw IncomparableLayoutsError(
            "corner counts differ: predicted " + std::to_string(pred.floor_polygon.size()) +
            " vs ground truth " + std::to_string(n));
    }
    const CornerPixels p = project_corners(pred, grid);
    const CornerPixels g = project_corners(gt, grid);

    double best = std::numeric_limits<double>::infinity();
    for (int shift = 0; shift < n; ++shift) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            const int j = (i + shift) % n;
            total += pixel_distance(p.ceiling[j], g.ceiling[i], grid);
            total += pixel_distance(p.floor[j], g.floor[i], grid);
        }
        best = std::min(best, total);
    }
    const double diagonal = std::hypot(grid.width, grid.height);
    return best / (2.0 * n) / diagonal;
}

double pixel_error(const BoundarySignals& pred, const BoundarySignals& gt,
                   const ImageGrid& grid) {
    if (pred.width() != gt.width()) {
        throw DomainError("signal widths differ: " + std::to_string(pred.width()) + " vs " +
                          std::to_string(gt.width()));
    }
    const SurfaceClassMap mp = signals_to_class_map(pred, grid);
    const SurfaceClassMap mg = signals_to_class_map(gt, grid);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < mp.labels.size(); ++i) {
        if (mp.labels[i] != mg.labels[i]) ++diff;
    }
    return static_cast<double>(diff) / static_cast<double>(mp.labels.size());
}

}  // namespace panolayout

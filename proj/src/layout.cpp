#include "panolayout/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace panolayout {

namespace {

constexpr double kEps = 1e-12;

bool is_x_edge(PlanePoint a, PlanePoint b) { return std::abs(a.z - b.z) <= kEps; }
bool is_z_edge(PlanePoint a, PlanePoint b) { return std::abs(a.x - b.x) <= kEps; }

// Proper segment intersection test for axis-aligned segments; shared
// endpoints of adjacent edges do not count.
bool segments_cross(PlanePoint a0, PlanePoint a1, PlanePoint b0, PlanePoint b1) {
    const auto overlap1d = [](double lo0, double hi0, double lo1, double hi1) {
        if (lo0 > hi0) std::swap(lo0, hi0);
        if (lo1 > hi1) std::swap(lo1, hi1);
        return std::max(lo0, lo1) <= std::min(hi0, hi1) + kEps;
    };
    return overlap1d(a0.x, a1.x, b0.x, b1.x) && overlap1d(a0.z, a1.z, b0.z, b1.z);
}

// Even-odd containment with rays cast along +x; strict means the point must
// not sit on the boundary.
bool contains_origin_strictly(const std::vector<PlanePoint>& poly) {
    const int n = static_cast<int>(poly.size());
    bool inside = false;
    for (int i = 0; i < n; ++i) {
        const PlanePoint a = poly[i];
        const PlanePoint b = poly[(i + 1) % n];
        if (is_x_edge(a, b)) {
            // horizontal edge through the origin
            if (std::abs(a.z) <= kEps && std::min(a.x, b.x) <= kEps &&
                std::max(a.x, b.x) >= -kEps) {
                return false;
            }
            continue;
        }
        // vertical edge x == a.x spanning [min z, max z)
        const double zlo = std::min(a.z, b.z);
        const double zhi = std::max(a.z, b.z);
        if (std::abs(a.x) <= kEps && zlo <= kEps && zhi >= -kEps) return false;
        if (a.x > 0.0 && zlo <= 0.0 && 0.0 < zhi) inside = !inside;
    }
    return inside;
}

}  // namespace

void ManhattanLayout::validate() const {
    const int n = static_cast<int>(floor_polygon.size());
    if (n < 4 || n % 2 != 0) {
        throw ValidationError("floor polygon needs an even vertex count >= 4, got " +
                              std::to_string(n));
    }
    if (!(camera_height > 0.0)) {
        throw ValidationError("camera height must be positive");
    }
    if (!(ceiling_height > camera_height)) {
        throw ValidationError("ceiling height must exceed the camera height");
    }
    for (int i = 0; i < n; ++i) {
        const PlanePoint a = floor_polygon[i];
        const PlanePoint b = floor_polygon[(i + 1) % n];
        const bool xe = is_x_edge(a, b);
        const bool ze = is_z_edge(a, b);
        if (xe == ze) {
            // either diagonal or zero length
            throw ValidationError("edge " + std::to_string(i) +
                                  " is not axis-aligned with positive length");
        }
        const PlanePoint c = floor_polygon[(i + 2) % n];
        if (is_x_edge(b, c) == xe) {
            throw ValidationError("consecutive edges " + std::to_string(i) + ", " +
                                  std::to_string(i + 1) + " do not alternate axis");
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // adjacent edges share a vertex
            if (segments_cross(floor_polygon[i], floor_polygon[(i + 1) % n], floor_polygon[j],
                               floor_polygon[(j + 1) % n])) {
                throw ValidationError("floor polygon self-intersects (edges " + std::to_string(i) +
                                      " and " + std::to_string(j) + ")");
            }
        }
    }
    double area2 = 0.0;
    for (int i = 0; i < n; ++i) {
        area2 += cross(floor_polygon[i], floor_polygon[(i + 1) % n]);
    }
    if (!(area2 > 0.0)) {
        throw ValidationError("floor polygon must wind counter-clockwise seen from above");
    }
    if (!contains_origin_strictly(floor_polygon)) {
        throw ValidationError("camera (the origin) must lie strictly inside the floor polygon");
    }
}

void BoundarySignals::validate() const {
    const std::size_t w = ceiling.size();
    if (w == 0) throw ValidationError("signals are empty");
    if (floor.size() != w || corner.size() != w) {
        throw ValidationError("signal channels must share one width");
    }
    for (std::size_t i = 0; i < w; ++i) {
        if (!(ceiling[i] > -kPi / 2.0 && ceiling[i] < 0.0)) {
            throw ValidationError("ceiling boundary at column " + std::to_string(i) +
                                  " must lie in (-pi/2, 0)");
        }
        if (!(floor[i] > 0.0 && floor[i] < kPi / 2.0)) {
            throw ValidationError("floor boundary at column " + std::to_string(i) +
                                  " must lie in (0, pi/2)");
        }
        if (!(corner[i] >= 0.0 && corner[i] <= 1.0)) {
            throw ValidationError("corner score at column " + std::to_string(i) +
                                  " must lie in [0, 1]");
        }
    }
}

void CornerAnnotation::validate() const {
    grid.validate();
    const int n = static_cast<int>(corners.size());
    if (n < 4) {
        throw ValidationError("annotation needs at least 4 corners for a closed room, got " +
                              std::to_string(n));
    }
    const double horizon_row = grid.height / 2.0 - 0.5;  // v == 0
    int descents = 0;
    for (int i = 0; i < n; ++i) {
        const Corner& c = corners[i];
        if (!(c.column >= 0.0 && c.column < grid.width)) {
            throw ValidationError("corner " + std::to_string(i) + " column outside image");
        }
        if (!(c.ceiling_row >= 0.0 && c.floor_row < grid.height)) {
            throw ValidationError("corner " + std::to_string(i) + " rows outside image");
        }
        if (!(c.ceiling_row < c.floor_row)) {
            throw ValidationError("corner " + std::to_string(i) +
                                  " must have ceiling_row < floor_row");
        }
        if (!(c.ceiling_row < horizon_row)) {
            throw ValidationError("corner " + std::to_string(i) +
                                  " ceiling row must lie above the horizon");
        }
        if (!(c.floor_row > horizon_row)) {
            throw ValidationError("corner " + std::to_string(i) +
                                  " floor row must lie below the horizon");
        }
        const double next = corners[(i + 1) % n].column;
        if (c.column == next) {
            throw ValidationError("corners " + std::to_string(i) + " and " +
                                  std::to_string((i + 1) % n) + " share a column");
        }
        if (next < c.column) ++descents;
    }
    if (descents > 1) {
        throw ValidationError("corner columns must be strictly increasing modulo width");
    }
}

double wall_distance(const ManhattanLayout& layout, double longitude) {
    const double dx = std::cos(longitude);
    const double dz = std::sin(longitude);
    const int n = static_cast<int>(layout.floor_polygon.size());
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const PlanePoint a = layout.floor_polygon[i];
        const PlanePoint b = layout.floor_polygon[(i + 1) % n];
        if (is_z_edge(a, b)) {
            // x == a.x plane
            if (std::abs(dx) < kEps) continue;
            const double t = a.x / dx;
            if (t <= kEps) continue;
            const double z = t * dz;
            if (z >= std::min(a.z, b.z) - 1e-9 && z <= std::max(a.z, b.z) + 1e-9) {
                best = std::min(best, t);
            }
        } else {
            if (std::abs(dz) < kEps) continue;
            const double t = a.z / dz;
            if (t <= kEps) continue;
            const double x = t * dx;
            if (x >= std::min(a.x, b.x) - 1e-9 && x <= std::max(a.x, b.x) + 1e-9) {
                best = std::min(best, t);
            }
        }
    }
    if (!std::isfinite(best)) {
        throw Error("ray cast found no wall; camera outside the polygon?");
    }
    return best;
}

BoundaryLatitudes boundary_at(const ManhattanLayout& layout, double longitude, double yaw) {
    const double r = wall_distance(layout, longitude - yaw);
    return {-std::atan2(layout.ceiling_height - layout.camera_height, r),
            std::atan2(layout.camera_height, r)};
}

std::vector<double> corner_longitudes(const ManhattanLayout& layout, double yaw) {
    std::vector<double> out;
    out.reserve(layout.floor_polygon.size());
    for (const PlanePoint& p : layout.floor_polygon) {
        out.push_back(normalize_longitude(std::atan2(p.z, p.x) + yaw));
    }
    return out;
}

int nearest_column(double longitude, const ImageGrid& grid) {
    double col = (normalize_longitude(longitude) + kPi) * grid.width / (2.0 * kPi) - 0.5;
    if (col < 0.0) col += grid.width;
    // round half toward the lower column
    int idx = static_cast<int>(std::ceil(col - 0.5));
    if (idx >= grid.width) idx -= grid.width;
    if (idx < 0) idx += grid.width;
    return idx;
}

BoundarySignals render_signals(const ManhattanLayout& layout, const ImageGrid& grid, double yaw,
                               double decay) {
    layout.validate();
    grid.validate();
    BoundarySignals sig;
    sig.ceiling.resize(grid.width);
    sig.floor.resize(grid.width);
    for (int i = 0; i < grid.width; ++i) {
        const double u = pixel_to_uv(i, 0, grid).u;
        const BoundaryLatitudes b = boundary_at(layout, u, yaw);
        sig.ceiling[i] = b.ceiling_v;
        sig.floor[i] = b.floor_v;
    }
    std::vector<int> cols;
    for (double u : corner_longitudes(layout, yaw)) {
        cols.push_back(nearest_column(u, grid));
    }
    sig.corner = corner_encoding(cols, grid.width, decay);
    return sig;
}

std::vector<double> corner_encoding(const std::vector<int>& corner_columns, int width,
                                    double decay) {
    if (corner_columns.empty()) {
        throw DomainError("corner encoding needs at least one corner column");
    }
    if (!(decay > 0.0 && decay < 1.0)) {
        throw DomainError("decay constant must lie in (0, 1)");
    }
    std::vector<double> out(width);
    for (int i = 0; i < width; ++i) {
        int dmin = width;
        for (int c : corner_columns) {
            const int d = std::abs(i - c);
            dmin = std::min(dmin, std::min(d, width - d));
        }
        out[i] = std::pow(decay, dmin);
    }
    return out;
}

namespace {

// Lifts an annotated boundary pixel to the horizontal plane y = plane_y
// (plane_y = -1 for ceiling corners, +1 for floor corners).
PlanePoint lift_to_plane(double column, double row, const ImageGrid& grid, double plane_y) {
    const Uv uv = pixel_to_uv(column, row, grid);
    return project_to_horizontal_plane(uv, plane_y);
}

// Distance along the ray at `longitude` to the line through a and b.
double ray_line_distance(double longitude, PlanePoint a, PlanePoint b, int wall_index) {
    const PlanePoint d{std::cos(longitude), std::sin(longitude)};
    const PlanePoint ab = b - a;
    const double denom = cross(d, ab);
    if (std::abs(denom) < 1e-12 * (length(ab) + 1.0)) {
        throw ValidationError("wall " + std::to_string(wall_index) +
                              " is radial; boundary between its corners is undefined");
    }
    const double s = cross(a, ab) / denom;
    if (!(s > 0.0)) {
        throw ValidationError("wall " + std::to_string(wall_index) +
                              " lies behind the camera at the queried column");
    }
    return s;
}

}  // namespace

BoundarySignals annotation_to_signals(const CornerAnnotation& annotation, double decay) {
    annotation.validate();
    const ImageGrid& grid = annotation.grid;
    const int n = static_cast<int>(annotation.corners.size());
    const int w = grid.width;

    std::vector<PlanePoint> ceil_pts(n), floor_pts(n);
    for (int j = 0; j < n; ++j) {
        const auto& c = annotation.corners[j];
        ceil_pts[j] = lift_to_plane(c.column, c.ceiling_row, grid, -1.0);
        floor_pts[j] = lift_to_plane(c.column, c.floor_row, grid, 1.0);
    }

    // Column i belongs to the wall between corners j and j+1 when it lies in
    // the circular column interval [column_j, column_{j+1}).
    const auto wall_of_column = [&](double col) {
        for (int j = 0; j < n; ++j) {
            const double c0 = annotation.corners[j].column;
            const double c1 = annotation.corners[(j + 1) % n].column;
            if (c0 < c1) {
                if (col >= c0 && col < c1) return j;
            } else {
                if (col >= c0 || col < c1) return j;  // wrapping interval
            }
        }
        return n - 1;  // unreachable for a valid annotation
    };

    BoundarySignals sig;
    sig.ceiling.resize(w);
    sig.floor.resize(w);
    for (int i = 0; i < w; ++i) {
        const double u = pixel_to_uv(i, 0, grid).u;
        const int j = wall_of_column(static_cast<double>(i));
        const int j1 = (j + 1) % n;
        const double rc = ray_line_distance(u, ceil_pts[j], ceil_pts[j1], j);
        const double rf = ray_line_distance(u, floor_pts[j], floor_pts[j1], j);
        sig.ceiling[i] = std::atan2(-1.0, rc);
        sig.floor[i] = std::atan2(1.0, rf);
    }

    std::vector<int> cols;
    cols.reserve(n);
    for (const auto& c : annotation.corners) {
        int idx = static_cast<int>(std::ceil(c.column - 0.5));
        if (idx >= w) idx -= w;
        if (idx < 0) idx += w;
        cols.push_back(idx);
    }
    sig.corner = corner_encoding(cols, w, decay);
    return sig;
}

SurfaceClassMap signals_to_class_map(const BoundarySignals& signals, const ImageGrid& grid) {
    grid.validate();
    if (signals.width() != grid.width) {
        throw DomainError("signals width does not match the grid");
    }
    SurfaceClassMap map;
    map.width = grid.width;
    map.height = grid.height;
    map.labels.resize(static_cast<std::size_t>(grid.width) * grid.height);
    for (int row = 0; row < grid.height; ++row) {
        const double v = pixel_to_uv(0, row, grid).v;
        for (int col = 0; col < grid.width; ++col) {
            Surface s = Surface::kWall;
            if (v < signals.ceiling[col]) {
                s = Surface::kCeiling;
            } else if (v > signals.floor[col]) {
                s = Surface::kFloor;
            }
            map.labels[static_cast<std::size_t>(row) * grid.width + col] = s;
        }
    }
    return map;
}

BoundarySignals rotate_signals(const BoundarySignals& signals, int shift) {
    const int w = signals.width();
    BoundarySignals out;
    out.ceiling.resize(w);
    out.floor.resize(w);
    out.corner.resize(w);
    for (int i = 0; i < w; ++i) {
        const int src = ((i - shift) % w + w) % w;
        out.ceiling[i] = signals.ceiling[src];
        out.floor[i] = signals.floor[src];
        out.corner[i] = signals.corner[src];
    }
    return out;
}

}  // namespace panolayout

#pragma once

#include <cstdint>
#include <vector>

#include "panolayout/geometry.hpp"

namespace panolayout {

/// Decay constant of the corner-existence encoding.
inline constexpr double kDefaultCornerDecay = 0.96;

/// Axis-aligned rectilinear room: the floor polygon (counter-clockwise as
/// seen from above) plus the two plane heights relative to the camera.
struct ManhattanLayout {
    std::vector<PlanePoint> floor_polygon;
    double camera_height = 1.6;    // camera above the floor, meters
    double ceiling_height = 3.2;   // full floor-to-ceiling distance, meters

    double floor_plane_y() const { return camera_height; }
    double ceiling_plane_y() const { return camera_height - ceiling_height; }

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;
};

/// Per-column layout representation: ceiling-wall and floor-wall boundary
/// latitudes plus a wall-wall (corner) existence score in [0, 1].
struct BoundarySignals {
    std::vector<double> ceiling;  // each < 0
    std::vector<double> floor;    // each > 0
    std::vector<double> corner;

    int width() const { return static_cast<int>(ceiling.size()); }
    void validate() const;
};

/// Ordered image-space corner annotation. Columns may be fractional and must
/// be strictly increasing modulo width (at most one wrap).
struct CornerAnnotation {
    struct Corner {
        double column = 0.0;
        double ceiling_row = 0.0;
        double floor_row = 0.0;
    };

    ImageGrid grid;
    std::vector<Corner> corners;

    void validate() const;
};

enum class Surface : std::uint8_t { kCeiling = 0, kWall = 1, kFloor = 2 };

/// Per-pixel surface labels; each column reads ceiling*, wall*, floor*
/// from top to bottom.
struct SurfaceClassMap {
    int width = 0;
    int height = 0;
    std::vector<Surface> labels;  // row-major

    Surface at(int col, int row) const {
        return labels[static_cast<std::size_t>(row) * width + col];
    }
};

/// Horizontal distance from the camera to the nearest wall along the given
/// floor-plan direction (layout frame).
double wall_distance(const ManhattanLayout& layout, double longitude);

/// Boundary latitudes at an arbitrary longitude; exact ray cast, no
/// column quantization. `yaw` rotates the scene before rendering.
struct BoundaryLatitudes {
    double ceiling_v = 0.0;
    double floor_v = 0.0;
};
BoundaryLatitudes boundary_at(const ManhattanLayout& layout, double longitude, double yaw = 0.0);

/// Exact longitudes of the polygon vertices after applying `yaw`, one per
/// vertex in polygon order.
std::vector<double> corner_longitudes(const ManhattanLayout& layout, double yaw = 0.0);

/// Nearest column for a longitude; exact half-column ties round toward the
/// lower column.
int nearest_column(double longitude, const ImageGrid& grid);

/// Analytic rendering of a layout into its 1D representation.
BoundarySignals render_signals(const ManhattanLayout& layout, const ImageGrid& grid,
                               double yaw = 0.0, double decay = kDefaultCornerDecay);

/// score[i] = decay^d(i) with d the circular column distance to the nearest
/// corner column.
std::vector<double> corner_encoding(const std::vector<int>& corner_columns, int width,
                                    double decay);

/// Boundary interpolation between annotated corners happens on straight 3D
/// wall edges (lifted to unit-height planes), not linearly in pixel rows.
BoundarySignals annotation_to_signals(const CornerAnnotation& annotation,
                                      double decay = kDefaultCornerDecay);

SurfaceClassMap signals_to_class_map(const BoundarySignals& signals, const ImageGrid& grid);

/// Circularly shifts all three signals by `shift` columns (scene yaw of
/// 2*pi*shift/W): output column i takes input column i - shift.
BoundarySignals rotate_signals(const BoundarySignals& signals, int shift);

}  // namespace panolayout

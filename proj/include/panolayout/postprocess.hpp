#pragma once

#include <vector>

#include "panolayout/layout.hpp"

namespace panolayout {

inline constexpr double kPeakWindowDeg = 5.0;
inline constexpr double kPeakThreshold = 0.05;
inline constexpr double kVoteRadius = 0.16;    // meters
inline constexpr double kVoteGridStep = 0.01;  // meters
inline constexpr double kDefaultCameraHeight = 1.6;

struct Peak {
    int column = 0;
    double score = 0.0;
};
using PeakList = std::vector<Peak>;

/// Non-maximum suppression on the corner score: a column is a peak when its
/// score exceeds `threshold` and dominates every column within the circular
/// window (strictly on the lower-column side, weakly on the other, so a
/// plateau yields exactly one peak at its lowest column).
PeakList detect_peaks(const std::vector<double>& score, double window_deg = kPeakWindowDeg,
                      double threshold = kPeakThreshold);

struct PlaneHeights {
    double floor_y = 0.0;    // +camera_height
    double ceiling_y = 0.0;  // negative, above the camera
};

/// Column-wise floor/ceiling distance voting: every column pins the shared
/// horizontal distance through the floor boundary and contributes one
/// ceiling-height estimate; the mean is returned.
PlaneHeights recover_heights(const BoundarySignals& signals,
                             double camera_height = kDefaultCameraHeight);

/// Contiguous run of columns between two adjacent peaks with the ceiling
/// boundary projected onto the recovered ceiling plane.
struct WallSegment {
    int first_column = 0;
    int column_count = 0;
    std::vector<PlanePoint> points;
    double direction_angle = 0.0;    // principal direction folded into [-pi/4, pi/4)
    int preferred_axis = 0;          // 0: plane x = const, 1: plane z = const
    double residual_variance = 0.0;  // variance along the minor principal axis
    bool degenerate = false;         // fewer than 2 points
};

/// Principal direction fold plus minor-axis variance for a point run.
void fit_principal_axis(WallSegment& segment);

/// Splits the projected ceiling boundary into per-wall segments; segments
/// partition all W columns, segment j covering peaks[j] .. peaks[j+1]-1.
std::vector<WallSegment> split_segments(const BoundarySignals& signals, const PeakList& peaks,
                                        double ceiling_y);

struct RotationEstimate {
    double angle = 0.0;
    bool reliable = true;  // false when every segment was degenerate
};

/// Misalignment estimate: length-weighted circular mean of the segment
/// principal directions computed in the 4-angle domain (90-degree fold).
RotationEstimate estimate_rotation(const std::vector<WallSegment>& segments);

/// Sequential wall construction with offset voting. Expects rotation already
/// applied to `segments` points and `peak_longitudes`. Walls go up in
/// ascending residual-variance order; a constructed neighbor forces the
/// perpendicular orientation; a segment whose two neighbors are already
/// built and mutually orthogonal yields corners from its bracketing peak
/// rays instead of a wall.
ManhattanLayout build_walls(const std::vector<WallSegment>& segments,
                            const std::vector<double>& peak_longitudes,
                            const PlaneHeights& heights, double camera_height);

enum class ReconstructMode { kGeneral, kCuboid };

struct ReconstructResult {
    /// Axis-aligned layout in the rotation-corrected frame.
    ManhattanLayout layout;
    /// Yaw from the corrected frame back to the signal frame; rotating the
    /// layout by this angle places it over the input panorama.
    double rotation = 0.0;
    PeakList peaks;
};

/// Full pipeline: peaks (cuboid mode keeps the four best), plane heights,
/// segmentation, rotation estimate, wall construction.
ReconstructResult reconstruct(const BoundarySignals& signals, ReconstructMode mode,
                              double camera_height = kDefaultCameraHeight);

}  // namespace panolayout

#pragma once

#include "panolayout/layout.hpp"
#include "panolayout/rng.hpp"

namespace panolayout {

/// Parameters for the random room generator.
struct RoomSpec {
    int corner_count = 4;             // 4, 6, 8, 10 or 12
    double min_half_extent = 2.0;     // base-rectangle half width, meters
    double max_half_extent = 4.0;
    double min_ceiling_height = 2.6;  // meters
    double max_ceiling_height = 3.4;
    double camera_jitter = 0.4;       // max offset of the room center from the camera
    double camera_height = 1.6;

    void validate() const;
};

/// Hard floors enforced by the generator regardless of the spec.
inline constexpr double kMinWallLength = 0.5;        // meters
inline constexpr double kMinCameraClearance = 0.3;   // meters

/// Random simple rectilinear room with exactly spec.corner_count vertices,
/// built by cutting rectangular corner notches out of a base rectangle.
/// Every wall is fully visible from the camera (the camera lies in the
/// polygon kernel), so rendered signals determine the room uniquely.
ManhattanLayout generate_room(const RoomSpec& spec, Rng& rng);

/// render_signals plus Gaussian perturbation of the boundary latitudes
/// (clamped so ceiling < 0 < floor holds per column) and a circular Gaussian
/// blur of the corner score at the matching angular scale. sigma == 0
/// returns the exact rendering.
BoundarySignals generate_noisy_signals(const ManhattanLayout& layout, const ImageGrid& grid,
                                       double noise_sigma, Rng& rng,
                                       double decay = kDefaultCornerDecay);

}  // namespace panolayout

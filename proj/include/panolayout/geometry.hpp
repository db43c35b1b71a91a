#pragma once

#include <cmath>
#include <numbers>

#include "panolayout/errors.hpp"

namespace panolayout {

inline constexpr double kPi = std::numbers::pi;

/// Longitude/latitude on the viewing sphere. u in [-pi, pi), v in
/// [-pi/2, pi/2]. Positive v points downward, toward the floor.
struct Uv {
    double u = 0.0;
    double v = 0.0;
};

/// Camera-frame 3D point in meters, y positive downward
/// (the floor plane sits at y = +camera_height).
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Horizontal floor-plan coordinates: x toward u = 0, z toward u = +pi/2.
struct PlanePoint {
    double x = 0.0;
    double z = 0.0;
};

inline PlanePoint operator+(PlanePoint a, PlanePoint b) { return {a.x + b.x, a.z + b.z}; }
inline PlanePoint operator-(PlanePoint a, PlanePoint b) { return {a.x - b.x, a.z - b.z}; }
inline PlanePoint operator*(double s, PlanePoint p) { return {s * p.x, s * p.z}; }
inline double cross(PlanePoint a, PlanePoint b) { return a.x * b.z - a.z * b.x; }
inline double dot(PlanePoint a, PlanePoint b) { return a.x * b.x + a.z * b.z; }
inline double length(PlanePoint p) { return std::hypot(p.x, p.z); }

/// Rotates counter-clockwise (as seen from above) by `angle` radians,
/// consistent with increasing longitude.
inline PlanePoint rotated(PlanePoint p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.x - s * p.z, s * p.x + c * p.z};
}

/// Equirectangular raster dimensions. A full panorama has width == 2 * height.
struct ImageGrid {
    int width = 1024;
    int height = 512;

    void validate() const;
};

/// Wraps a longitude into [-pi, pi).
double normalize_longitude(double u);

/// Pixel-center convention: column c spans longitude of (c + 0.5) / W turns.
/// Row 0 is at the ceiling pole side (v near -pi/2).
Uv pixel_to_uv(double col, double row, const ImageGrid& grid);

struct PixelPos {
    double col = 0.0;
    double row = 0.0;
};

/// Exact inverse of pixel_to_uv; the column wraps modulo width, the row
/// is returned unclamped.
PixelPos uv_to_pixel(const Uv& uv, const ImageGrid& grid);

/// Unit direction for a sphere coordinate.
Vec3 uv_to_dir(const Uv& uv);

/// Direction back to sphere coordinates; at the poles u is fixed to 0.
Uv dir_to_uv(const Vec3& p);

/// Intersects the viewing ray of `uv` with the horizontal plane y == plane_y
/// and returns the (x, z) hit point. The ray must point toward the plane.
PlanePoint project_to_horizontal_plane(const Uv& uv, double plane_y);

}  // namespace panolayout

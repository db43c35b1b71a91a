#include "panolayout/geometry.hpp"

#include <string>

namespace panolayout {

void ImageGrid::validate() const {
    if (width <= 0 || height <= 0) {
        throw ValidationError("image grid dimensions must be positive");
    }
    if (width != 2 * height) {
        throw ValidationError("image grid must satisfy width == 2 * height, got " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
}

double normalize_longitude(double u) {
    double out = u - 2.0 * kPi * std::floor((u + kPi) / (2.0 * kPi));
    // floor rounding can leave exactly +pi behind
    if (out >= kPi) out -= 2.0 * kPi;
    return out;
}

Uv pixel_to_uv(double col, double row, const ImageGrid& grid) {
    grid.validate();
    if (!(col >= 0.0) || !(col < grid.width) || !(row >= 0.0) || !(row < grid.height)) {
        throw DomainError("pixel (" + std::to_string(col) + ", " + std::to_string(row) +
                          ") outside grid " + std::to_string(grid.width) + "x" +
                          std::to_string(grid.height));
    }
    return {2.0 * kPi * (col + 0.5) / grid.width - kPi,
            kPi * (row + 0.5) / grid.height - kPi / 2.0};
}

PixelPos uv_to_pixel(const Uv& uv, const ImageGrid& grid) {
    grid.validate();
    double col = (uv.u + kPi) * grid.width / (2.0 * kPi) - 0.5;
    if (col < 0.0) col += grid.width;
    if (col >= grid.width) col -= grid.width;
    const double row = (uv.v + kPi / 2.0) * grid.height / kPi - 0.5;
    return {col, row};
}

Vec3 uv_to_dir(const Uv& uv) {
    const double cv = std::cos(uv.v);
    return {cv * std::cos(uv.u), std::sin(uv.v), cv * std::sin(uv.u)};
}

Uv dir_to_uv(const Vec3& p) {
    const double norm = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    if (norm == 0.0) {
        throw DomainError("cannot project the zero vector to sphere coordinates");
    }
    const double u = (p.x == 0.0 && p.z == 0.0) ? 0.0 : std::atan2(p.z, p.x);
    return {u, std::asin(p.y / norm)};
}

PlanePoint project_to_horizontal_plane(const Uv& uv, double plane_y) {
    if (uv.v == 0.0 || plane_y == 0.0 || std::signbit(uv.v) != std::signbit(plane_y)) {
        throw DomainError("viewing ray does not intersect the horizontal plane y = " +
                          std::to_string(plane_y));
    }
    // scale the unit direction so its y component equals plane_y
    const double r = plane_y / std::tan(uv.v);
    return {r * std::cos(uv.u), r * std::sin(uv.u)};
}

}  // namespace panolayout

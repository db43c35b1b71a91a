#pragma once

#include <cmath>

#include "panolayout/layout.hpp"

namespace test_util {

inline panolayout::ManhattanLayout square_room(double half = 2.0, double camera = 1.6,
                                               double ceiling = 3.2) {
    panolayout::ManhattanLayout room;
    room.floor_polygon = {{half, -half}, {half, half}, {-half, half}, {-half, -half}};
    room.camera_height = camera;
    room.ceiling_height = ceiling;
    return room;
}

inline panolayout::ManhattanLayout l_room() {
    // 6-corner L shape with the camera in its kernel
    panolayout::ManhattanLayout room;
    room.floor_polygon = {{3.0, -2.0}, {3.0, 1.0},  {1.0, 1.0},
                          {1.0, 2.5},  {-2.0, 2.5}, {-2.0, -2.0}};
    room.camera_height = 1.6;
    room.ceiling_height = 3.0;
    return room;
}

inline double max_vertex_distance(const panolayout::ManhattanLayout& a,
                                  const panolayout::ManhattanLayout& b) {
    // nearest-vertex matching, order independent
    double worst = 0.0;
    for (const auto& pa : a.floor_polygon) {
        double best = 1e18;
        for (const auto& pb : b.floor_polygon) {
            best = std::min(best, panolayout::length(pa - pb));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace test_util

#pragma once

#include <cmath>

namespace kft {

// Axis-aligned box stored in continuous center form. Corner form (x, y, w, h)
// with x = cx - w/2 is used only at I/O boundaries.
struct BoundingBox {
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;

    static BoundingBox from_corner(double x, double y, double w, double h) {
        return {x + w / 2.0, y + h / 2.0, w, h};
    }

    double x() const { return cx - w / 2.0; }
    double y() const { return cy - h / 2.0; }

    bool valid() const { return w > 0.0 && h > 0.0; }
};

inline double center_distance(const BoundingBox& a, const BoundingBox& b) {
    return std::hypot(a.cx - b.cx, a.cy - b.cy);
}

}  // namespace kft

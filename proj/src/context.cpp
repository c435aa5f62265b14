#include "kft/context.hpp"

#include <algorithm>
#include <cmath>

#include "kft/errors.hpp"

namespace kft::context {

std::vector<std::pair<double, double>> place_patches(const BoundingBox& target, int count) {
    if (count < 1 || count > 8)
        throw NumericError(ErrorCode::InvalidParameter,
                           "place_patches: count must be in [1, 8]");
    // Angle order starting east, counter-clockwise in image coordinates
    // (y grows downward, so "north" is -h).
    const double w = target.w, h = target.h;
    const std::pair<double, double> offsets[8] = {
        {+w, 0.0}, {+w, -h}, {0.0, -h}, {-w, -h}, {-w, 0.0}, {-w, +h}, {0.0, +h}, {+w, +h},
    };
    std::vector<std::pair<double, double>> centers;
    centers.reserve(count);
    for (int p = 0; p < count; ++p)
        centers.emplace_back(target.cx + offsets[p].first, target.cy + offsets[p].second);
    return centers;
}

double score_patch(const BoundingBox& target, double patch_cx, double patch_cy,
                   double base_score) {
    const double dist = std::hypot(patch_cx - target.cx, patch_cy - target.cy);
    if (dist <= 0.0)
        throw NumericError(ErrorCode::InvalidParameter,
                           "score_patch: patch center coincides with target center");
    return std::min(target.w, target.h) / dist * base_score;
}

}  // namespace kft::context

#pragma once

#include <utility>
#include <vector>

#include "kft/features.hpp"
#include "kft/geometry.hpp"

namespace kft::context {

struct ContextPatch {
    double cx = 0.0;
    double cy = 0.0;
    double score = 0.0;
    features::FeatureMap features;
};

// The omni-directional background patches around the target for one training
// frame. Empty when context learning is off.
struct ContextPatchSet {
    std::vector<ContextPatch> patches;
    int count() const { return static_cast<int>(patches.size()); }
};

// Ring of target-size patches tangent to the target box: offsets
// {(+-w, 0), (0, +-h), (+-w, +-h)} from its center, ordered by angle starting
// east. count <= 8.
std::vector<std::pair<double, double>> place_patches(const BoundingBox& target, int count = 8);

// S_p = min(w, h) / |O O_p| * base_score. Closer patches score higher.
double score_patch(const BoundingBox& target, double patch_cx, double patch_cy,
                   double base_score);

}  // namespace kft::context

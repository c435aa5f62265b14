#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kft/dataio.hpp"

namespace kft::synth {

// Continuous center trajectory: start + linear drift + per-axis sinusoid.
// All-zero rates give a static path.
struct MotionPath {
    double x0 = 0.0, y0 = 0.0;
    double vx = 0.0, vy = 0.0;          // pixels per frame
    double amp_x = 0.0, amp_y = 0.0;    // sinusoid amplitude, pixels
    double period_x = 60.0, period_y = 60.0;  // frames
    double phase_x = 0.0, phase_y = 0.0;

    std::pair<double, double> at(int frame0) const;  // frame0 is 0-based
};

struct SpriteSpec {
    double w = 40.0, h = 30.0;
    MotionPath path;
    uint64_t texture_seed = 0;  // 0 = share the target texture (look-alike)
};

struct SynthSpec {
    int canvas_w = 320;
    int canvas_h = 240;
    int num_frames = 100;
    uint64_t seed = 1;
    SpriteSpec target;
    std::vector<SpriteSpec> distractors;
    int blur_radius = 0;                            // box blur, pixels
    std::vector<std::pair<int, int>> blur_spans;    // inclusive 1-based frame ranges
};

// Deterministic for a fixed spec: same seed, bit-identical sequence. Errors
// if the target path leaves the canvas or any distractor overlaps the target
// by more than 10% IoU on any frame.
Sequence generate_synthetic(const SynthSpec& spec);

// Fixtures shared by the CLI `synth` command and the acceptance suite:
// "static", "moving", "blur_distractor".
SynthSpec synth_preset(const std::string& name);

}  // namespace kft::synth

#include "kft/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "kft/errors.hpp"
#include "kft/eval.hpp"

namespace kft::synth {

namespace {

// std::uniform_* distributions are implementation-defined; scale the raw
// engine output instead so sequences are bit-identical everywhere.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint8_t uniform_byte(std::mt19937_64& rng, int lo, int hi) {
    return static_cast<uint8_t>(lo + static_cast<int>(uniform01(rng) * (hi - lo + 1)));
}

// Smooth background: coarse seeded color grid, bilinearly upsampled.
Image make_background(int h, int w, uint64_t seed) {
    const int cell = 16;
    const int gh = h / cell + 2, gw = w / cell + 2;
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    std::vector<std::array<uint8_t, 3>> nodes(static_cast<size_t>(gh) * gw);
    for (auto& n : nodes) {
        const uint8_t base = uniform_byte(rng, 70, 150);
        n = {base, base, uniform_byte(rng, 70, 150)};
    }
    Image out(h, w);
    for (int r = 0; r < h; ++r) {
        const double gy = static_cast<double>(r) / cell;
        const int y0 = static_cast<int>(gy);
        const double fy = gy - y0;
        for (int c = 0; c < w; ++c) {
            const double gx = static_cast<double>(c) / cell;
            const int x0 = static_cast<int>(gx);
            const double fx = gx - x0;
            for (int ch = 0; ch < 3; ++ch) {
                const double v00 = nodes[static_cast<size_t>(y0) * gw + x0][ch];
                const double v01 = nodes[static_cast<size_t>(y0) * gw + x0 + 1][ch];
                const double v10 = nodes[static_cast<size_t>(y0 + 1) * gw + x0][ch];
                const double v11 = nodes[static_cast<size_t>(y0 + 1) * gw + x0 + 1][ch];
                const double v = (1 - fy) * ((1 - fx) * v00 + fx * v01) +
                                 fy * ((1 - fx) * v10 + fx * v11);
                out.at(r, c, ch) = static_cast<uint8_t>(std::lround(v));
            }
        }
    }
    return out;
}

// High-contrast block texture; same seed, same sprite.
Image make_sprite(int h, int w, uint64_t seed) {
    const int block = 4;
    const int gh = (h + block - 1) / block, gw = (w + block - 1) / block;
    std::mt19937_64 rng(seed * 0xbf58476d1ce4e5b9ULL + 7);
    std::vector<std::array<uint8_t, 3>> blocks(static_cast<size_t>(gh) * gw);
    for (auto& b : blocks)
        b = {uniform_byte(rng, 0, 255), uniform_byte(rng, 0, 255), uniform_byte(rng, 0, 255)};
    Image out(h, w);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const auto& b = blocks[static_cast<size_t>(r / block) * gw + c / block];
            // Dark border ring makes the extent unambiguous.
            const bool border = r == 0 || c == 0 || r == h - 1 || c == w - 1;
            for (int ch = 0; ch < 3; ++ch) out.at(r, c, ch) = border ? 20 : b[ch];
        }
    return out;
}

void paste(Image& canvas, const Image& sprite, int x, int y) {
    for (int r = 0; r < sprite.height(); ++r) {
        const int rr = y + r;
        if (rr < 0 || rr >= canvas.height()) continue;
        for (int c = 0; c < sprite.width(); ++c) {
            const int cc = x + c;
            if (cc < 0 || cc >= canvas.width()) continue;
            for (int ch = 0; ch < 3; ++ch) canvas.at(rr, cc, ch) = sprite.at(r, c, ch);
        }
    }
}

void box_blur(Image& im, int radius) {
    if (radius < 1) return;
    const int h = im.height(), w = im.width();
    const int win = 2 * radius + 1;
    Image tmp = im;
    // horizontal then vertical pass, clamped edges
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            for (int ch = 0; ch < 3; ++ch) {
                int acc = 0;
                for (int k = -radius; k <= radius; ++k)
                    acc += im.at(r, std::clamp(c + k, 0, w - 1), ch);
                tmp.at(r, c, ch) = static_cast<uint8_t>(acc / win);
            }
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            for (int ch = 0; ch < 3; ++ch) {
                int acc = 0;
                for (int k = -radius; k <= radius; ++k)
                    acc += tmp.at(std::clamp(r + k, 0, h - 1), c, ch);
                im.at(r, c, ch) = static_cast<uint8_t>(acc / win);
            }
}

BoundingBox rounded_box(const SpriteSpec& sprite, int frame0) {
    const auto [cx, cy] = sprite.path.at(frame0);
    const int w = static_cast<int>(std::lround(sprite.w));
    const int h = static_cast<int>(std::lround(sprite.h));
    const int x = static_cast<int>(std::lround(cx - sprite.w / 2.0));
    const int y = static_cast<int>(std::lround(cy - sprite.h / 2.0));
    return BoundingBox::from_corner(x, y, w, h);
}

bool in_blur_span(const SynthSpec& spec, int frame1) {
    for (const auto& [a, b] : spec.blur_spans)
        if (frame1 >= a && frame1 <= b) return true;
    return false;
}

}  // namespace

std::pair<double, double> MotionPath::at(int frame0) const {
    const double two_pi = 2.0 * std::numbers::pi;
    double x = x0 + vx * frame0;
    double y = y0 + vy * frame0;
    if (amp_x != 0.0) x += amp_x * std::sin(two_pi * frame0 / period_x + phase_x);
    if (amp_y != 0.0) y += amp_y * std::sin(two_pi * frame0 / period_y + phase_y);
    return {x, y};
}

Sequence generate_synthetic(const SynthSpec& spec) {
    if (spec.num_frames < 2 || spec.canvas_w < 8 || spec.canvas_h < 8)
        throw NumericError(ErrorCode::InvalidParameter, "generate_synthetic: bad canvas spec");

    const Image background = make_background(spec.canvas_h, spec.canvas_w, spec.seed);
    const int tw = static_cast<int>(std::lround(spec.target.w));
    const int th = static_cast<int>(std::lround(spec.target.h));
    const Image target_sprite = make_sprite(th, tw, spec.seed + spec.target.texture_seed);

    std::vector<Image> distractor_sprites;
    for (const auto& d : spec.distractors) {
        const int dw = static_cast<int>(std::lround(d.w));
        const int dh = static_cast<int>(std::lround(d.h));
        distractor_sprites.push_back(
            make_sprite(dh, dw, spec.seed + d.texture_seed));
    }

    Sequence seq;
    seq.name = "synthetic";
    for (int k = 0; k < spec.num_frames; ++k) {
        const BoundingBox gt = rounded_box(spec.target, k);
        if (gt.x() < 0 || gt.y() < 0 || gt.x() + gt.w > spec.canvas_w ||
            gt.y() + gt.h > spec.canvas_h)
            throw NumericError(ErrorCode::PathExitsCanvas,
                               "generate_synthetic: target leaves canvas at frame " +
                                   std::to_string(k + 1));

        Image frame = background;
        for (size_t d = 0; d < spec.distractors.size(); ++d) {
            const BoundingBox db = rounded_box(spec.distractors[d], k);
            if (eval::iou(db, gt) > 0.10)
                throw NumericError(ErrorCode::DistractorOverlap,
                                   "generate_synthetic: distractor " + std::to_string(d) +
                                       " overlaps target by more than 10% at frame " +
                                       std::to_string(k + 1));
            paste(frame, distractor_sprites[d], static_cast<int>(db.x()),
                  static_cast<int>(db.y()));
        }
        paste(frame, target_sprite, static_cast<int>(gt.x()), static_cast<int>(gt.y()));
        if (spec.blur_radius > 0 && in_blur_span(spec, k + 1))
            box_blur(frame, spec.blur_radius);

        seq.frames.push_back(Frame{k + 1, std::move(frame)});
        seq.groundtruth.push_back(gt);
    }
    return seq;
}

SynthSpec synth_preset(const std::string& name) {
    SynthSpec spec;
    if (name == "static") {
        spec.num_frames = 100;
        spec.seed = 11;
        spec.target.path = {160.0, 120.0};
        return spec;
    }
    if (name == "moving") {
        spec.num_frames = 100;
        spec.seed = 21;
        spec.target.path.x0 = 60.0;
        spec.target.path.y0 = 105.0;
        spec.target.path.vx = 2.0;
        spec.target.path.amp_y = 18.0;
        spec.target.path.period_y = 50.0;
        return spec;
    }
    if (name == "blur_distractor") {
        spec.num_frames = 120;
        spec.seed = 31;
        spec.target.path.x0 = 50.0;
        spec.target.path.y0 = 100.0;
        spec.target.path.vx = 1.6;
        SpriteSpec look_alike;
        look_alike.path.x0 = 270.0;
        look_alike.path.y0 = 140.0;
        look_alike.path.vx = -1.6;
        spec.distractors.push_back(look_alike);
        spec.blur_radius = 3;
        spec.blur_spans = {{30, 44}, {75, 90}};
        return spec;
    }
    throw DataError(ErrorCode::InvalidParameter, "unknown synth preset: " + name);
}

}  // namespace kft::synth

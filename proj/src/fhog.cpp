#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "kft/errors.hpp"
#include "kft/features.hpp"

namespace kft::features {

namespace {

constexpr int kOrientations = 18;  // contrast-sensitive bins over [0, 2pi)
constexpr double kTruncation = 0.2;
constexpr double kBlockEps = 1e-4;
// 1/sqrt(18), energy scale of the 4 texture features.
const double kTextureScale = 0.2357;

struct Gradient {
    double mag;
    int bin;  // hard orientation bin in [0, 18)
};

// Per-pixel gradient from [-1, 0, 1] filters with replicated borders, taking
// the RGB channel with the largest magnitude.
Gradient pixel_gradient(const Image& im, int r, int c) {
    const int h = im.height(), w = im.width();
    const int rm = std::max(r - 1, 0), rp = std::min(r + 1, h - 1);
    const int cm = std::max(c - 1, 0), cp = std::min(c + 1, w - 1);
    double best = -1.0, bdx = 0.0, bdy = 0.0;
    for (int ch = 0; ch < 3; ++ch) {
        const double dx = static_cast<double>(im.at(r, cp, ch)) - im.at(r, cm, ch);
        const double dy = static_cast<double>(im.at(rp, c, ch)) - im.at(rm, c, ch);
        const double m2 = dx * dx + dy * dy;
        if (m2 > best) {
            best = m2;
            bdx = dx;
            bdy = dy;
        }
    }
    double theta = std::atan2(bdy, bdx);
    if (theta < 0) theta += 2.0 * std::numbers::pi;
    int bin = static_cast<int>(theta * kOrientations / (2.0 * std::numbers::pi));
    if (bin >= kOrientations) bin = 0;
    return {std::sqrt(best), bin};
}

}  // namespace

std::vector<GridR> fhog(const Image& patch, int cell_size) {
    const int cells_h = patch.height() / cell_size;
    const int cells_w = patch.width() / cell_size;
    if (cells_h < 1 || cells_w < 1)
        throw NumericError(ErrorCode::InvalidParameter, "fhog: patch smaller than one cell");

    // Orientation histograms with bilinear spatial binning.
    std::vector<GridR> hist(kOrientations, GridR(cells_h, cells_w, 0.0));
    for (int r = 0; r < cells_h * cell_size; ++r) {
        for (int c = 0; c < cells_w * cell_size; ++c) {
            const Gradient g = pixel_gradient(patch, r, c);
            if (g.mag == 0.0) continue;
            const double yc = (r + 0.5) / cell_size - 0.5;
            const double xc = (c + 0.5) / cell_size - 0.5;
            const int y0 = static_cast<int>(std::floor(yc));
            const int x0 = static_cast<int>(std::floor(xc));
            const double fy = yc - y0;
            const double fx = xc - x0;
            const double wy[2] = {1.0 - fy, fy};
            const double wx[2] = {1.0 - fx, fx};
            for (int dy = 0; dy < 2; ++dy) {
                const int cy = y0 + dy;
                if (cy < 0 || cy >= cells_h) continue;
                for (int dx = 0; dx < 2; ++dx) {
                    const int cx = x0 + dx;
                    if (cx < 0 || cx >= cells_w) continue;
                    hist[g.bin].at(cy, cx) += g.mag * wy[dy] * wx[dx];
                }
            }
        }
    }

    // Cell energy over contrast-insensitive orientations.
    GridR energy(cells_h, cells_w, 0.0);
    for (int o = 0; o < kOrientations / 2; ++o)
        for (int r = 0; r < cells_h; ++r)
            for (int c = 0; c < cells_w; ++c) {
                const double v = hist[o].at(r, c) + hist[o + kOrientations / 2].at(r, c);
                energy.at(r, c) += v * v;
            }

    auto block_energy = [&](int r0, int c0) {
        const auto cr = [&](int v, int hi) { return std::clamp(v, 0, hi - 1); };
        return energy.at(cr(r0, cells_h), cr(c0, cells_w)) +
               energy.at(cr(r0 + 1, cells_h), cr(c0, cells_w)) +
               energy.at(cr(r0, cells_h), cr(c0 + 1, cells_w)) +
               energy.at(cr(r0 + 1, cells_h), cr(c0 + 1, cells_w));
    };

    // Channel order: 18 contrast-sensitive, 9 contrast-insensitive, 4 texture.
    std::vector<GridR> out(31, GridR(cells_h, cells_w, 0.0));
    for (int r = 0; r < cells_h; ++r) {
        for (int c = 0; c < cells_w; ++c) {
            const double norms[4] = {
                1.0 / std::sqrt(block_energy(r - 1, c - 1) + kBlockEps),
                1.0 / std::sqrt(block_energy(r - 1, c) + kBlockEps),
                1.0 / std::sqrt(block_energy(r, c - 1) + kBlockEps),
                1.0 / std::sqrt(block_energy(r, c) + kBlockEps),
            };
            double texture[4] = {0.0, 0.0, 0.0, 0.0};
            for (int o = 0; o < kOrientations; ++o) {
                const double v = hist[o].at(r, c);
                double acc = 0.0;
                for (int k = 0; k < 4; ++k) {
                    const double nv = std::min(v * norms[k], kTruncation);
                    acc += nv;
                    texture[k] += nv;
                }
                out[o].at(r, c) = 0.5 * acc;
            }
            for (int o = 0; o < kOrientations / 2; ++o) {
                const double v = hist[o].at(r, c) + hist[o + kOrientations / 2].at(r, c);
                double acc = 0.0;
                for (int k = 0; k < 4; ++k) acc += std::min(v * norms[k], kTruncation);
                out[kOrientations + o].at(r, c) = 0.5 * acc;
            }
            for (int k = 0; k < 4; ++k)
                out[kOrientations + kOrientations / 2 + k].at(r, c) = kTextureScale * texture[k];
        }
    }
    return out;
}

}  // namespace kft::features

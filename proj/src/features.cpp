#include "kft/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>

#include "kft/errors.hpp"

namespace kft::features {

namespace fs = std::filesystem;

namespace {

double bilinear_at(const Image& frame, double y, double x, int ch) {
    const int h = frame.height(), w = frame.width();
    const double xc = std::clamp(x, 0.0, static_cast<double>(w - 1));
    const double yc = std::clamp(y, 0.0, static_cast<double>(h - 1));
    const int x0 = static_cast<int>(std::floor(xc));
    const int y0 = static_cast<int>(std::floor(yc));
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fx = xc - x0;
    const double fy = yc - y0;
    const double v00 = frame.at(y0, x0, ch), v01 = frame.at(y0, x1, ch);
    const double v10 = frame.at(y1, x0, ch), v11 = frame.at(y1, x1, ch);
    return (1 - fy) * ((1 - fx) * v00 + fx * v01) + fy * ((1 - fx) * v10 + fx * v11);
}

}  // namespace

Image crop_patch(const Image& frame, const PatchSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0 || spec.out_width <= 0 || spec.out_height <= 0)
        throw NumericError(ErrorCode::InvalidParameter, "crop_patch: non-positive patch size");
    Image out(spec.out_height, spec.out_width);
    const double sx = spec.width / spec.out_width;
    const double sy = spec.height / spec.out_height;
    const double x0 = spec.cx - spec.width / 2.0;
    const double y0 = spec.cy - spec.height / 2.0;
    for (int r = 0; r < spec.out_height; ++r) {
        const double srcy = y0 + r * sy;
        for (int c = 0; c < spec.out_width; ++c) {
            const double srcx = x0 + c * sx;
            for (int ch = 0; ch < 3; ++ch) {
                const double v = bilinear_at(frame, srcy, srcx, ch);
                out.at(r, c, ch) = static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
            }
        }
    }
    return out;
}

// --- color table -------------------------------------------------------------

namespace {

std::mutex g_table_mutex;
fs::path g_table_path;
std::vector<float> g_table;

struct Prototype {
    const char* name;
    double r, g, b;
};

// 10 color attributes; soft assignment by a Gaussian kernel in normalized RGB.
constexpr Prototype kPrototypes[kColorTableCols] = {
    {"black", 0.00, 0.00, 0.00}, {"blue", 0.10, 0.25, 1.00},
    {"brown", 0.55, 0.29, 0.10}, {"grey", 0.50, 0.50, 0.50},
    {"green", 0.10, 0.60, 0.15}, {"orange", 1.00, 0.60, 0.05},
    {"pink", 1.00, 0.72, 0.80},  {"purple", 0.55, 0.15, 0.65},
    {"red", 0.95, 0.10, 0.10},   {"white", 1.00, 1.00, 1.00},
};

fs::path default_table_path() {
    if (const char* env = std::getenv("KFT_COLOR_TABLE")) return fs::path(env);
#ifdef KFT_SOURCE_RESOURCE_DIR
    const fs::path source_copy = fs::path(KFT_SOURCE_RESOURCE_DIR) / "colornames.bin";
    if (fs::exists(source_copy)) return source_copy;
#endif
    return fs::path("resources") / "colornames.bin";
}

}  // namespace

std::vector<float> build_color_table() {
    std::vector<float> table(static_cast<size_t>(kColorTableRows) * kColorTableCols);
    const double bandwidth = 0.35;
    for (int ri = 0; ri < 32; ++ri) {
        for (int gi = 0; gi < 32; ++gi) {
            for (int bi = 0; bi < 32; ++bi) {
                const double r = (8.0 * ri + 4.0) / 255.0;
                const double g = (8.0 * gi + 4.0) / 255.0;
                const double b = (8.0 * bi + 4.0) / 255.0;
                const size_t row = (static_cast<size_t>(ri) << 10) |
                                   (static_cast<size_t>(gi) << 5) | static_cast<size_t>(bi);
                double sum = 0.0;
                double w[kColorTableCols];
                for (int k = 0; k < kColorTableCols; ++k) {
                    const auto& p = kPrototypes[k];
                    const double d2 = (r - p.r) * (r - p.r) + (g - p.g) * (g - p.g) +
                                      (b - p.b) * (b - p.b);
                    w[k] = std::exp(-d2 / (2.0 * bandwidth * bandwidth));
                    sum += w[k];
                }
                for (int k = 0; k < kColorTableCols; ++k)
                    table[row * kColorTableCols + k] = static_cast<float>(w[k] / sum);
            }
        }
    }
    return table;
}

void write_color_table(const fs::path& path) {
    const std::vector<float> table = build_color_table();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(ErrorCode::WriteFailure, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(table.data()),
              static_cast<std::streamsize>(table.size() * sizeof(float)));
}

void set_color_table_path(const fs::path& path) {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    g_table_path = path;
    g_table.clear();
}

fs::path color_table_path() {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    return g_table_path.empty() ? default_table_path() : g_table_path;
}

const std::vector<float>& color_table() {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    if (!g_table.empty()) return g_table;
    const fs::path path = g_table_path.empty() ? default_table_path() : g_table_path;
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError(ErrorCode::MalformedResource,
                        "color table resource not found: " + path.string());
    std::vector<float> table(static_cast<size_t>(kColorTableRows) * kColorTableCols);
    in.read(reinterpret_cast<char*>(table.data()),
            static_cast<std::streamsize>(table.size() * sizeof(float)));
    if (in.gcount() != static_cast<std::streamsize>(table.size() * sizeof(float)) ||
        in.peek() != std::char_traits<char>::eof())
        throw DataError(ErrorCode::MalformedResource,
                        "color table has wrong size (expected 32768x10 float32): " +
                            path.string());
    g_table = std::move(table);
    return g_table;
}

// --- extraction --------------------------------------------------------------

namespace {

GridR cell_mean_gray(const Image& patch, int cell) {
    const int ch = patch.height() / cell, cw = patch.width() / cell;
    GridR out(ch, cw, 0.0);
    for (int r = 0; r < ch * cell; ++r)
        for (int c = 0; c < cw * cell; ++c)
            out.at(r / cell, c / cell) += luma(patch, r, c) / 255.0 - 0.5;
    const double inv = 1.0 / (cell * cell);
    for (size_t i = 0; i < out.size(); ++i) out[i] *= inv;
    return out;
}

std::vector<GridR> cell_mean_colornames(const Image& patch, int cell) {
    const std::vector<float>& table = color_table();
    const int ch = patch.height() / cell, cw = patch.width() / cell;
    std::vector<GridR> out(kColorTableCols, GridR(ch, cw, 0.0));
    for (int r = 0; r < ch * cell; ++r) {
        for (int c = 0; c < cw * cell; ++c) {
            const size_t row = (static_cast<size_t>(patch.at(r, c, 0) >> 3) << 10) |
                               (static_cast<size_t>(patch.at(r, c, 1) >> 3) << 5) |
                               static_cast<size_t>(patch.at(r, c, 2) >> 3);
            for (int k = 0; k < kColorTableCols; ++k)
                out[k].at(r / cell, c / cell) += table[row * kColorTableCols + k];
        }
    }
    const double inv = 1.0 / (cell * cell);
    for (auto& g : out)
        for (size_t i = 0; i < g.size(); ++i) g[i] *= inv;
    return out;
}

}  // namespace

FeatureMap extract_features(const Image& patch, int cell_size,
                            const std::vector<std::string>& channels) {
    if (cell_size < 1 || patch.height() % cell_size != 0 || patch.width() % cell_size != 0)
        throw NumericError(ErrorCode::InvalidParameter,
                           "extract_features: patch dimensions must be divisible by cell_size");
    FeatureMap map;
    map.cell_size = cell_size;
    for (const auto& name : channels) {
        if (name == kGray) {
            map.channels.push_back(cell_mean_gray(patch, cell_size));
            map.layout.groups.push_back({kGray, 1});
        } else if (name == kGradHist) {
            auto hog = fhog(patch, cell_size);
            for (auto& g : hog) map.channels.push_back(std::move(g));
            map.layout.groups.push_back({kGradHist, 31});
        } else if (name == kColorNames) {
            auto cn = cell_mean_colornames(patch, cell_size);
            for (auto& g : cn) map.channels.push_back(std::move(g));
            map.layout.groups.push_back({kColorNames, kColorTableCols});
        } else {
            throw DataError(ErrorCode::UnknownChannel, "unknown feature channel: " + name);
        }
    }
    return map;
}

void apply_window(FeatureMap& map, const GridR& window) {
    for (auto& chan : map.channels) {
        require_same_shape(chan, window, "apply_window");
        for (int r = 0; r < chan.height(); ++r)
            for (int c = 0; c < chan.width(); ++c) chan.at(r, c) *= window.at(r, c);
    }
    map.windowed = true;
}

}  // namespace kft::features

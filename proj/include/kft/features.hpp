#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kft/grid.hpp"
#include "kft/image.hpp"

namespace kft::features {

struct ChannelGroup {
    std::string name;
    int count = 0;
};

struct ChannelLayout {
    std::vector<ChannelGroup> groups;
    int total() const {
        int n = 0;
        for (const auto& g : groups) n += g.count;
        return n;
    }
};

// D-channel cell-grid tensor extracted from an image patch.
struct FeatureMap {
    std::vector<GridR> channels;
    int cell_size = 4;
    ChannelLayout layout;
    bool windowed = false;

    int height() const { return channels.empty() ? 0 : channels.front().height(); }
    int width() const { return channels.empty() ? 0 : channels.front().width(); }
    int depth() const { return static_cast<int>(channels.size()); }
};

struct PatchSpec {
    double cx = 0.0;  // pixels, continuous
    double cy = 0.0;
    double width = 0.0;   // source extent in pixels
    double height = 0.0;
    int out_width = 0;    // resample target
    int out_height = 0;
};

// Crops the region around (cx, cy) and resamples it to out_width x out_height
// with bilinear interpolation. Output sample o maps to source coordinate
// x0 + o * (width / out_width) with x0 = cx - width/2; out-of-frame samples
// replicate the nearest edge pixel, so any center is valid.
Image crop_patch(const Image& frame, const PatchSpec& spec);

// Channel names accepted by extract_features.
inline constexpr const char* kGray = "gray";
inline constexpr const char* kGradHist = "fhog";
inline constexpr const char* kColorNames = "cn";

// Per-cell features: gray (1), Felzenszwalb gradient histograms (31),
// color names (10). Patch dimensions must be divisible by cell_size.
FeatureMap extract_features(const Image& patch, int cell_size,
                            const std::vector<std::string>& channels);

void apply_window(FeatureMap& map, const GridR& window);

// 31-channel Felzenszwalb gradient-histogram features on the cell grid:
// 18 contrast-sensitive + 9 contrast-insensitive orientations + 4 texture
// energies.
std::vector<GridR> fhog(const Image& patch, int cell_size);

// --- Color-attribute lookup table ------------------------------------------
//
// 32768 rows x 10 columns of little-endian float32, row-major. Row index is
// (r >> 3) << 10 | (g >> 3) << 5 | (b >> 3). Each row is a probability
// distribution over the 10 color attributes.

inline constexpr int kColorTableRows = 32768;
inline constexpr int kColorTableCols = 10;

// Resolution order: explicit set_color_table_path(), KFT_COLOR_TABLE env var,
// resources/colornames.bin next to the executable's share dir, then the
// source-tree resources directory.
void set_color_table_path(const std::filesystem::path& path);
std::filesystem::path color_table_path();

// Loads (and caches) the table; throws DataError if the resource is missing
// or has the wrong size.
const std::vector<float>& color_table();

// Deterministic generator used to produce the shipped resource.
std::vector<float> build_color_table();
void write_color_table(const std::filesystem::path& path);

}  // namespace kft::features

#pragma once

#include <cstdint>
#include <vector>

#include "kft/grid.hpp"

namespace kft {

// Interleaved 8-bit RGB raster, row-major.
class Image {
public:
    Image() = default;
    Image(int height, int width)
        : h_(height), w_(width), data_(static_cast<size_t>(height) * width * 3, 0) {}

    int height() const { return h_; }
    int width() const { return w_; }
    bool empty() const { return data_.empty(); }

    uint8_t* row(int r) { return data_.data() + static_cast<size_t>(r) * w_ * 3; }
    const uint8_t* row(int r) const { return data_.data() + static_cast<size_t>(r) * w_ * 3; }

    uint8_t& at(int r, int c, int ch) { return data_[(static_cast<size_t>(r) * w_ + c) * 3 + ch]; }
    uint8_t at(int r, int c, int ch) const {
        return data_[(static_cast<size_t>(r) * w_ + c) * 3 + ch];
    }

    uint8_t* data() { return data_.data(); }
    const uint8_t* data() const { return data_.data(); }
    size_t byte_size() const { return data_.size(); }

    friend bool operator==(const Image&, const Image&) = default;

private:
    int h_ = 0;
    int w_ = 0;
    std::vector<uint8_t> data_;
};

// Rec.601 luma in [0, 255].
inline double luma(const Image& im, int r, int c) {
    return 0.299 * im.at(r, c, 0) + 0.587 * im.at(r, c, 1) + 0.114 * im.at(r, c, 2);
}

GridR grayscale(const Image& im);

}  // namespace kft

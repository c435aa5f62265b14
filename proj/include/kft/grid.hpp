#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "kft/errors.hpp"

namespace kft {

using cplx = std::complex<double>;

// Dense row-major H x W grid. The workhorse container for responses, labels,
// feature channels and spectra.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int height, int width)
        : h_(height), w_(width), data_(static_cast<size_t>(height) * width) {}
    Grid(int height, int width, T value)
        : h_(height), w_(width), data_(static_cast<size_t>(height) * width, value) {}

    int height() const { return h_; }
    int width() const { return w_; }
    size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    T& at(int r, int c) { return data_[static_cast<size_t>(r) * w_ + c]; }
    const T& at(int r, int c) const { return data_[static_cast<size_t>(r) * w_ + c]; }

    T& operator[](size_t i) { return data_[i]; }
    const T& operator[](size_t i) const { return data_[i]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    bool same_shape(const Grid& other) const { return h_ == other.h_ && w_ == other.w_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int h_ = 0;
    int w_ = 0;
    std::vector<T> data_;
};

using GridR = Grid<double>;
using GridC = Grid<cplx>;

inline void require_same_shape(const GridR& a, const GridR& b, const char* what) {
    if (!a.same_shape(b))
        throw NumericError(ErrorCode::ShapeMismatch, std::string(what) + ": grid shapes differ");
}

inline void require_same_shape(const GridC& a, const GridC& b, const char* what) {
    if (!a.same_shape(b))
        throw NumericError(ErrorCode::ShapeMismatch, std::string(what) + ": grid shapes differ");
}

}  // namespace kft

#include "kft/dsp.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace kft::dsp {

namespace {

// FFTW plan creation is not thread safe; execution via fftw_execute_dft on
// distinct buffers is. Plans are cached per (h, w, sign) and created with
// FFTW_UNALIGNED so they can run on any buffer.
class PlanCache {
public:
    fftw_plan get(int h, int w, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(h, w, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> in(static_cast<size_t>(h) * w);
        std::vector<cplx> out(in.size());
        fftw_plan plan = fftw_plan_dft_2d(
            h, w, reinterpret_cast<fftw_complex*>(in.data()),
            reinterpret_cast<fftw_complex*>(out.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

GridC transform(const GridC& grid, int sign) {
    const int h = grid.height(), w = grid.width();
    GridC in = grid;
    GridC out(h, w);
    fftw_plan plan = plan_cache().get(h, w, sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(grid.size()));
    for (size_t i = 0; i < out.size(); ++i) out[i] *= scale;
    return out;
}

}  // namespace

GridC fft2(const GridC& grid) { return transform(grid, FFTW_FORWARD); }

GridC fft2(const GridR& grid) {
    GridC tmp(grid.height(), grid.width());
    for (size_t i = 0; i < grid.size(); ++i) tmp[i] = cplx(grid[i], 0.0);
    return transform(tmp, FFTW_FORWARD);
}

GridC ifft2(const GridC& grid) { return transform(grid, FFTW_BACKWARD); }

GridR ifft2_real(const GridC& grid) {
    GridC full = ifft2(grid);
    GridR out(grid.height(), grid.width());
    for (size_t i = 0; i < full.size(); ++i) out[i] = full[i].real();
    return out;
}

GridR circular_correlate(const GridR& a, const GridR& b) {
    require_same_shape(a, b, "circular_correlate");
    // c(t) = sum_u a(u+t) b(u)  <=>  c_hat = sqrt(N) * a_hat .* conj(b_hat)
    GridC ah = fft2(a);
    GridC bh = fft2(b);
    const double root_n = std::sqrt(static_cast<double>(a.size()));
    for (size_t i = 0; i < ah.size(); ++i) ah[i] = root_n * ah[i] * std::conj(bh[i]);
    return ifft2_real(ah);
}

GridR hann_window(int height, int width) {
    auto axis = [](int n) {
        std::vector<double> v(n, 1.0);
        if (n > 1) {
            for (int i = 0; i < n; ++i)
                v[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
        }
        return v;
    };
    const std::vector<double> row = axis(height);
    const std::vector<double> col = axis(width);
    GridR out(height, width);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) out.at(r, c) = row[r] * col[c];
    return out;
}

Label gaussian_label(int height, int width, double sigma) {
    if (sigma <= 0.0)
        throw NumericError(ErrorCode::InvalidParameter, "gaussian_label: sigma must be > 0");
    const int r0 = height / 2;
    const int c0 = width / 2;
    GridR y(height, width);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            // Shift so the peak lands on (0, 0): sample the centered Gaussian
            // at the circularly displaced position.
            const int rr = (r + r0) % height;
            const int cc = (c + c0) % width;
            const double dr = rr - r0;
            const double dc = cc - c0;
            y.at(r, c) = std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma));
        }
    }
    return Label{std::move(y)};
}

}  // namespace kft::dsp

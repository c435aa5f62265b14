#pragma once

#include "kft/grid.hpp"

namespace kft::dsp {

// All transforms are unitary (1/sqrt(N) per direction) so Parseval holds
// exactly: ||x||^2 == ||fft2(x)||^2. Every module shares this normalization;
// the solver's closed forms depend on it.
GridC fft2(const GridR& grid);
GridC fft2(const GridC& grid);
GridC ifft2(const GridC& grid);

// Inverse transform of a conjugate-symmetric spectrum; returns the real part.
GridR ifft2_real(const GridC& grid);

// c(t) = sum_u a(u + t) * b(u), both shifts circular. Computed via the
// transform; tests hold it to the direct O(N^2) sum.
GridR circular_correlate(const GridR& a, const GridR& b);

// Separable raised cosine with zeros on the border ring. Degenerate 1-length
// axes clamp to 1 so windowing never annihilates the input.
GridR hann_window(int height, int width);

struct Label {
    GridR y;  // peak value exactly 1 at (0, 0)
};

// Gaussian response grid, built centered and then circularly shifted so the
// peak sits at (0, 0). sigma is in cells.
Label gaussian_label(int height, int width, double sigma);

}  // namespace kft::dsp

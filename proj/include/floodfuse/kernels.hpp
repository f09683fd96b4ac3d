#pragma once

#include <cstddef>

namespace floodfuse::kernels {

/// Dispatch table for the data-parallel inner loops. Every implementation
/// must produce bit-identical output for identical input: per cell (or per
/// placement) the arithmetic is the same IEEE ops in the same order, and the
/// SIMD variants vectorize across cells, never inside a reduction. The
/// equivalence suite enforces this with memcmp.
struct Kernels {
    const char* name;

    // Elementwise over n cells; NaN is the in-memory nodata and absorbs.
    void (*map_add)(const double* a, const double* b, double* out, std::size_t n);
    void (*map_sub)(const double* a, const double* b, double* out, std::size_t n);
    // Division; denominator zero yields NaN.
    void (*map_div)(const double* a, const double* b, double* out, std::size_t n);
    // (a-b)/(a+b); sum zero yields NaN.
    void (*normalized_diff)(const double* a, const double* b, double* out,
                            std::size_t n);

    // Focal mean of one output row over a (2*radius+1)^2 window, truncated at
    // the grid edge, skipping NaN neighbors; all-NaN windows stay NaN.
    void (*focal_mean_row)(const double* in, double* out, int width, int height,
                           int radius, int row);

    // Zero-mean normalized cross-correlation scores for every horizontal
    // placement in one row. tdev is the mean-subtracted template (tw x th),
    // t_sq_sum its sum of squares. Windows with zero variance score 0.
    void (*ncc_row)(const double* image, int image_w, const double* tdev,
                    int tw, int th, double t_sq_sum, int row,
                    double* scores_out, int placements);
};

/// Portable reference implementation; always available.
const Kernels& scalar();

/// AVX2 implementation, or nullptr when the CPU (or build) lacks it.
const Kernels* avx2();

/// Implementation selected at first use: FLOODFUSE_SIMD=scalar forces the
/// reference path, =avx2 requires the SIMD path, anything else picks the
/// fastest available.
const Kernels& active();

}  // namespace floodfuse::kernels

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

// Per-cell scalar primitives shared by the reference table and the SIMD
// tables (which fall back to them at row edges and vector tails). Keeping
// the one definition here is what makes bit-equality across tables hold.

namespace floodfuse::kernels::detail {

inline constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

inline double focal_mean_cell(const double* in, int width, int height,
                              int radius, int x, int y) {
    const int y0 = std::max(0, y - radius);
    const int y1 = std::min(height - 1, y + radius);
    const int x0 = std::max(0, x - radius);
    const int x1 = std::min(width - 1, x + radius);
    double sum = 0.0;
    double cnt = 0.0;
    for (int wy = y0; wy <= y1; ++wy) {
        const double* row = in + static_cast<std::size_t>(wy) * width;
        for (int wx = x0; wx <= x1; ++wx) {
            const double v = row[wx];
            if (v == v) {  // non-NaN
                sum += v;
                cnt += 1.0;
            }
        }
    }
    return sum / cnt;  // cnt == 0 -> NaN, the all-nodata case
}

// Literal two-pass form of score = sum(T'*I') / sqrt(sum(T'^2)*sum(I'^2)),
// I' being the window minus its own mean. Template deviations and their
// square sum arrive precomputed.
inline double ncc_score_at(const double* image, int image_w, const double* tdev,
                           int tw, int th, double t_sq_sum, int u, int v) {
    const double n = static_cast<double>(tw) * static_cast<double>(th);
    double wsum = 0.0;
    for (int ty = 0; ty < th; ++ty) {
        const double* row = image + static_cast<std::size_t>(v + ty) * image_w + u;
        for (int tx = 0; tx < tw; ++tx) wsum += row[tx];
    }
    const double mean = wsum / n;
    double num = 0.0;
    double den = 0.0;
    for (int ty = 0; ty < th; ++ty) {
        const double* row = image + static_cast<std::size_t>(v + ty) * image_w + u;
        const double* trow = tdev + static_cast<std::size_t>(ty) * tw;
        for (int tx = 0; tx < tw; ++tx) {
            const double d = row[tx] - mean;
            num += trow[tx] * d;
            den += d * d;
        }
    }
    if (den == 0.0) return 0.0;  // constant window convention
    double score = num / std::sqrt(t_sq_sum * den);
    if (score > 1.0) score = 1.0;
    if (score < -1.0) score = -1.0;
    return score;  // NaN rides through untouched
}

inline double div_cell(double a, double b) { return b == 0.0 ? kNan : a / b; }

inline double normalized_diff_cell(double a, double b) {
    const double s = a + b;
    return s == 0.0 ? kNan : (a - b) / s;
}

}  // namespace floodfuse::kernels::detail

// AVX2 variants of the kernel table. Vectorization is always across cells or
// placements (4 doubles per vector); per-lane arithmetic mirrors the scalar
// reference op for op, with no FMA, so outputs are bit-identical to it.
// Edge cells and vector tails reuse the scalar per-cell primitives.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "floodfuse/kernels.hpp"
#include "kernels_detail.hpp"

namespace floodfuse::kernels {

namespace {

using namespace detail;

const __m256d kVecNan = _mm256_set1_pd(kNan);
const __m256d kVecZero = _mm256_setzero_pd();
const __m256d kVecOne = _mm256_set1_pd(1.0);

void map_add(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] + b[i];
}

void map_sub(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] - b[i];
}

void map_div(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d bv = _mm256_loadu_pd(b + i);
        const __m256d q = _mm256_div_pd(_mm256_loadu_pd(a + i), bv);
        const __m256d zero_den = _mm256_cmp_pd(bv, kVecZero, _CMP_EQ_OQ);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(q, kVecNan, zero_den));
    }
    for (; i < n; ++i) out[i] = div_cell(a[i], b[i]);
}

void normalized_diff(const double* a, const double* b, double* out,
                     std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d av = _mm256_loadu_pd(a + i);
        const __m256d bv = _mm256_loadu_pd(b + i);
        const __m256d s = _mm256_add_pd(av, bv);
        const __m256d q = _mm256_div_pd(_mm256_sub_pd(av, bv), s);
        const __m256d zero_den = _mm256_cmp_pd(s, kVecZero, _CMP_EQ_OQ);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(q, kVecNan, zero_den));
    }
    for (; i < n; ++i) out[i] = normalized_diff_cell(a[i], b[i]);
}

void focal_mean_row(const double* in, double* out, int width, int height,
                    int radius, int row) {
    double* dst = out + static_cast<std::size_t>(row) * width;
    const int y0 = row - radius < 0 ? 0 : row - radius;
    const int y1 = row + radius >= height ? height - 1 : row + radius;

    // Columns whose horizontal window is not truncated.
    const int full_lo = radius;
    const int full_hi = width - radius;  // exclusive

    int x = 0;
    for (; x < full_lo && x < width; ++x) {
        dst[x] = focal_mean_cell(in, width, height, radius, x, row);
    }
    for (; x + 4 <= full_hi; x += 4) {
        __m256d sum = kVecZero;
        __m256d cnt = kVecZero;
        for (int wy = y0; wy <= y1; ++wy) {
            const double* prow = in + static_cast<std::size_t>(wy) * width + x;
            for (int dx = -radius; dx <= radius; ++dx) {
                const __m256d v = _mm256_loadu_pd(prow + dx);
                const __m256d valid = _mm256_cmp_pd(v, v, _CMP_ORD_Q);
                sum = _mm256_add_pd(sum, _mm256_and_pd(v, valid));
                cnt = _mm256_add_pd(cnt, _mm256_and_pd(kVecOne, valid));
            }
        }
        _mm256_storeu_pd(dst + x, _mm256_div_pd(sum, cnt));
    }
    for (; x < width; ++x) {
        dst[x] = focal_mean_cell(in, width, height, radius, x, row);
    }
}

void ncc_row(const double* image, int image_w, const double* tdev, int tw,
             int th, double t_sq_sum, int row, double* scores_out,
             int placements) {
    const __m256d n = _mm256_set1_pd(static_cast<double>(tw) *
                                     static_cast<double>(th));
    const __m256d tsq = _mm256_set1_pd(t_sq_sum);
    int u = 0;
    for (; u + 4 <= placements; u += 4) {
        __m256d wsum = kVecZero;
        for (int ty = 0; ty < th; ++ty) {
            const double* prow =
                image + static_cast<std::size_t>(row + ty) * image_w + u;
            for (int tx = 0; tx < tw; ++tx) {
                wsum = _mm256_add_pd(wsum, _mm256_loadu_pd(prow + tx));
            }
        }
        const __m256d mean = _mm256_div_pd(wsum, n);
        __m256d num = kVecZero;
        __m256d den = kVecZero;
        for (int ty = 0; ty < th; ++ty) {
            const double* prow =
                image + static_cast<std::size_t>(row + ty) * image_w + u;
            const double* trow = tdev + static_cast<std::size_t>(ty) * tw;
            for (int tx = 0; tx < tw; ++tx) {
                const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(prow + tx), mean);
                num = _mm256_add_pd(num, _mm256_mul_pd(_mm256_set1_pd(trow[tx]), d));
                den = _mm256_add_pd(den, _mm256_mul_pd(d, d));
            }
        }
        __m256d score =
            _mm256_div_pd(num, _mm256_sqrt_pd(_mm256_mul_pd(tsq, den)));
        const __m256d den_zero = _mm256_cmp_pd(den, kVecZero, _CMP_EQ_OQ);
        score = _mm256_blendv_pd(score, kVecZero, den_zero);
        const __m256d hi = _mm256_cmp_pd(score, kVecOne, _CMP_GT_OQ);
        score = _mm256_blendv_pd(score, kVecOne, hi);
        const __m256d lo =
            _mm256_cmp_pd(score, _mm256_set1_pd(-1.0), _CMP_LT_OQ);
        score = _mm256_blendv_pd(score, _mm256_set1_pd(-1.0), lo);
        _mm256_storeu_pd(scores_out + u, score);
    }
    for (; u < placements; ++u) {
        scores_out[u] = ncc_score_at(image, image_w, tdev, tw, th, t_sq_sum, u, row);
    }
}

}  // namespace

const Kernels* avx2_table() {
    static const Kernels table{
        "avx2",          map_add,        map_sub, map_div,
        normalized_diff, focal_mean_row, ncc_row,
    };
    return &table;
}

}  // namespace floodfuse::kernels

#endif  // x86

#include "floodfuse/kernels.hpp"

#include "kernels_detail.hpp"

namespace floodfuse::kernels {

namespace {

using namespace detail;

void map_add(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void map_sub(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void map_div(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = div_cell(a[i], b[i]);
}

void normalized_diff(const double* a, const double* b, double* out,
                     std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = normalized_diff_cell(a[i], b[i]);
}

void focal_mean_row(const double* in, double* out, int width, int height,
                    int radius, int row) {
    double* dst = out + static_cast<std::size_t>(row) * width;
    for (int x = 0; x < width; ++x) {
        dst[x] = focal_mean_cell(in, width, height, radius, x, row);
    }
}

void ncc_row(const double* image, int image_w, const double* tdev, int tw,
             int th, double t_sq_sum, int row, double* scores_out,
             int placements) {
    for (int u = 0; u < placements; ++u) {
        scores_out[u] = ncc_score_at(image, image_w, tdev, tw, th, t_sq_sum, u, row);
    }
}

}  // namespace

const Kernels& scalar() {
    static const Kernels table{
        "scalar", map_add,        map_sub, map_div,
        normalized_diff, focal_mean_row, ncc_row,
    };
    return table;
}

}  // namespace floodfuse::kernels

#include "floodfuse/raster_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "floodfuse/errors.hpp"
#include "floodfuse/kernels.hpp"
#include "floodfuse/parallel.hpp"

namespace floodfuse {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require_same_crs(const GeoGrid& a, const GeoGrid& b) {
    if (a.crs != b.crs) {
        throw CrsMismatchError("CRS mismatch: '" + a.crs + "' vs '" + b.crs + "'");
    }
}

void require_same_grid(const GeoGrid& a, const GeoGrid& b) {
    if (!(a == b)) throw GridMismatchError("rasters are not on the same grid");
}

// Round-half-up nearest source pixel, or -1 when outside coverage.
int nearest_index(double frac, int size) {
    const double idx = std::floor(frac + 0.5);
    if (idx < 0.0 || idx > size - 1) return -1;
    return static_cast<int>(idx);
}

double bilinear_sample(const Raster& src, double sc, double sr) {
    const int w = src.width(), h = src.height();
    if (sc < -0.5 || sc > w - 0.5 || sr < -0.5 || sr > h - 0.5) return kNan;
    // clamp so the outer half-pixel replicates the edge row/column
    const double c = std::clamp(sc, 0.0, static_cast<double>(w - 1));
    const double r = std::clamp(sr, 0.0, static_cast<double>(h - 1));
    const int c0 = std::min(static_cast<int>(c), w - 1);
    const int r0 = std::min(static_cast<int>(r), h - 1);
    const int c1 = std::min(c0 + 1, w - 1);
    const int r1 = std::min(r0 + 1, h - 1);
    const double fc = c - c0;
    const double fr = r - r0;
    const double v00 = src.at(c0, r0), v01 = src.at(c1, r0);
    const double v10 = src.at(c0, r1), v11 = src.at(c1, r1);
    const double top = v00 * (1.0 - fc) + v01 * fc;
    const double bot = v10 * (1.0 - fc) + v11 * fc;
    return top * (1.0 - fr) + bot * fr;  // NaN corners with weight > 0 absorb
}

}  // namespace

Raster align(const Raster& source, const GeoGrid& target, ResampleMethod method) {
    require_same_crs(source.grid(), target);
    if (!target.valid()) throw InvalidArgumentError("invalid target grid");
    if (source.grid() == target) return source;

    Raster out(target, kNan);
    out.set_nodata(source.nodata());
    const GeoGrid& sg = source.grid();
    parallel_for(target.height, [&](std::int64_t row0, std::int64_t row1) {
        for (std::int64_t row = row0; row < row1; ++row) {
            const double y = target.row_to_y(static_cast<double>(row));
            const double sr = sg.y_to_row(y);
            for (int col = 0; col < target.width; ++col) {
                const double x = target.col_to_x(col);
                const double sc = sg.x_to_col(x);
                double v;
                if (method == ResampleMethod::Nearest) {
                    const int ic = nearest_index(sc, sg.width);
                    const int ir = nearest_index(sr, sg.height);
                    v = (ic < 0 || ir < 0) ? kNan : source.at(ic, ir);
                } else {
                    v = bilinear_sample(source, sc, sr);
                }
                out.set(col, static_cast<int>(row), v);
            }
        }
    });
    return out;
}

FloodMask align_mask(const FloodMask& source, const GeoGrid& target) {
    require_same_crs(source.grid(), target);
    if (source.grid() == target) return source;
    FloodMask out(target, MaskState::NoObs);
    out.provenance() = source.provenance();
    out.date_range() = source.date_range();
    const GeoGrid& sg = source.grid();
    parallel_for(target.height, [&](std::int64_t row0, std::int64_t row1) {
        for (std::int64_t row = row0; row < row1; ++row) {
            const double sr = sg.y_to_row(target.row_to_y(static_cast<double>(row)));
            const int ir = nearest_index(sr, sg.height);
            for (int col = 0; col < target.width; ++col) {
                const int ic = nearest_index(sg.x_to_col(target.col_to_x(col)),
                                             sg.width);
                if (ic >= 0 && ir >= 0) {
                    out.set(col, static_cast<int>(row), source.at(ic, ir));
                }
            }
        }
    });
    return out;
}

Raster mosaic(std::span<const Raster> rasters, Reducer reducer) {
    if (rasters.empty()) throw InvalidArgumentError("mosaic of zero rasters");
    for (const Raster& r : rasters) require_same_grid(rasters.front().grid(), r.grid());
    if (rasters.size() == 1) return rasters.front();

    Raster out(rasters.front().grid(), kNan);
    const std::size_t k = rasters.size();
    parallel_for(out.grid().cell_count(), [&](std::int64_t i0, std::int64_t i1) {
        std::vector<double> vals;
        vals.reserve(k);
        double* dst = out.data();
        for (std::int64_t i = i0; i < i1; ++i) {
            vals.clear();
            for (const Raster& r : rasters) {
                const double v = r.samples()[static_cast<std::size_t>(i)];
                if (!std::isnan(v)) vals.push_back(v);
            }
            if (vals.empty()) continue;  // stays NaN
            double res;
            switch (reducer) {
                case Reducer::Mean: {
                    double s = 0.0;
                    for (double v : vals) s += v;
                    res = s / static_cast<double>(vals.size());
                    break;
                }
                case Reducer::Median: {
                    std::sort(vals.begin(), vals.end());
                    const std::size_t m = vals.size() / 2;
                    res = vals.size() % 2 ? vals[m] : (vals[m - 1] + vals[m]) / 2.0;
                    break;
                }
                case Reducer::Min:
                    res = *std::min_element(vals.begin(), vals.end());
                    break;
                default:
                    res = *std::max_element(vals.begin(), vals.end());
                    break;
            }
            dst[i] = res;
        }
    });
    return out;
}

Raster map_binary(const Raster& a, const Raster& b, BinaryOp op) {
    require_same_grid(a.grid(), b.grid());
    Raster out(a.grid(), kNan);
    const auto& k = kernels::active();
    const auto fn = op == BinaryOp::Sub   ? k.map_sub
                    : op == BinaryOp::Add ? k.map_add
                                          : k.map_div;
    parallel_for(a.grid().cell_count(), [&](std::int64_t i0, std::int64_t i1) {
        fn(a.data() + i0, b.data() + i0, out.data() + i0,
           static_cast<std::size_t>(i1 - i0));
    });
    return out;
}

}  // namespace floodfuse

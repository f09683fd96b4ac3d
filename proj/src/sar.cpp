#include "floodfuse/sar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "floodfuse/errors.hpp"
#include "floodfuse/kernels.hpp"
#include "floodfuse/parallel.hpp"
#include "floodfuse/raster_ops.hpp"

#include "components.hpp"

namespace floodfuse {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

void SarParams::validate() const {
    if (speckle_window < 3 || speckle_window % 2 == 0) {
        throw InvalidArgumentError("speckle_window must be odd and >= 3");
    }
    if (!(diff_db_threshold > 0.0)) {
        throw InvalidArgumentError("diff_db_threshold must be positive");
    }
    if (min_cluster_px < 1) {
        throw InvalidArgumentError("min_cluster_px must be >= 1");
    }
}

Raster to_db(const Raster& linear) {
    Raster out(linear.grid(), kNan);
    parallel_for(linear.grid().cell_count(), [&](std::int64_t i0, std::int64_t i1) {
        const double* src = linear.data();
        double* dst = out.data();
        for (std::int64_t i = i0; i < i1; ++i) {
            const double v = src[i];
            dst[i] = v > 0.0 ? 10.0 * std::log10(v) : kNan;
        }
    });
    return out;
}

Raster speckle_filter(const Raster& raster, const SarParams& params) {
    params.validate();
    const int radius = params.speckle_window / 2;
    Raster out(raster.grid(), kNan);
    const int w = raster.width(), h = raster.height();

    if (params.speckle_kind == SpeckleKind::Mean) {
        const auto& k = kernels::active();
        parallel_for(h, [&](std::int64_t r0, std::int64_t r1) {
            for (std::int64_t row = r0; row < r1; ++row) {
                k.focal_mean_row(raster.data(), out.data(), w, h, radius,
                                 static_cast<int>(row));
            }
        });
        return out;
    }

    parallel_for(h, [&](std::int64_t r0, std::int64_t r1) {
        std::vector<double> window;
        window.reserve(static_cast<std::size_t>(params.speckle_window) *
                       params.speckle_window);
        for (std::int64_t row = r0; row < r1; ++row) {
            const int y0 = std::max<int>(0, static_cast<int>(row) - radius);
            const int y1 = std::min<int>(h - 1, static_cast<int>(row) + radius);
            for (int x = 0; x < w; ++x) {
                const int x0 = std::max(0, x - radius);
                const int x1 = std::min(w - 1, x + radius);
                window.clear();
                for (int wy = y0; wy <= y1; ++wy) {
                    for (int wx = x0; wx <= x1; ++wx) {
                        const double v = raster.at(wx, wy);
                        if (!std::isnan(v)) window.push_back(v);
                    }
                }
                if (window.empty()) continue;
                std::sort(window.begin(), window.end());
                const std::size_t m = window.size() / 2;
                out.set(x, static_cast<int>(row),
                        window.size() % 2 ? window[m]
                                          : (window[m - 1] + window[m]) / 2.0);
            }
        }
    });
    return out;
}

namespace {

const GeoGrid* finest_grid(std::span<const SarScene> a, std::span<const SarScene> b) {
    const GeoGrid* best = nullptr;
    for (const auto* scenes : {&a, &b}) {
        for (const SarScene& s : *scenes) {
            if (!best || s.backscatter.grid().pixel_dx < best->pixel_dx) {
                best = &s.backscatter.grid();
            }
        }
    }
    return best;
}

void clear_where_flagged(FloodMask& mask, const Raster& flag) {
    if (!(flag.grid() == mask.grid())) {
        throw GridMismatchError("refinement mask is not on the flood-mask grid");
    }
    auto st = mask.states();
    const double* f = flag.data();
    for (std::size_t i = 0; i < st.size(); ++i) {
        if (st[i] == MaskState::Flooded && f[i] == 1.0) st[i] = MaskState::Dry;
    }
}

}  // namespace

FloodMask refine_mask(const FloodMask& mask, const SarParams& params) {
    params.validate();
    FloodMask out = mask;

    if (params.min_cluster_px > 1) {
        std::vector<std::int32_t> labels;
        const auto sizes = detail::label_flooded_components(out, labels);
        auto st = out.states();
        for (std::size_t i = 0; i < st.size(); ++i) {
            if (labels[i] >= 0 && sizes[labels[i]] < params.min_cluster_px) {
                st[i] = MaskState::Dry;
            }
        }
    }
    if (params.permanent_water) clear_where_flagged(out, *params.permanent_water);
    if (params.slope_mask) clear_where_flagged(out, *params.slope_mask);
    return out;
}

FloodMask sar_flood_mask(std::span<const SarScene> pre_scenes,
                         std::span<const SarScene> post_scenes,
                         const SarParams& params) {
    params.validate();
    if (pre_scenes.empty() || post_scenes.empty()) {
        throw InvalidArgumentError("need at least one scene per epoch");
    }
    const Polarization pol = pre_scenes.front().polarization;
    for (const auto* scenes : {&pre_scenes, &post_scenes}) {
        for (const SarScene& s : *scenes) {
            if (s.polarization != pol) {
                throw InvalidArgumentError("scenes mix VH and VV polarizations");
            }
        }
    }

    const GeoGrid target = *finest_grid(pre_scenes, post_scenes);
    auto epoch_db = [&](std::span<const SarScene> scenes) {
        std::vector<Raster> filtered;
        filtered.reserve(scenes.size());
        for (const SarScene& s : scenes) {
            const Raster aligned = align(s.backscatter, target, ResampleMethod::Bilinear);
            filtered.push_back(speckle_filter(to_db(aligned), params));
        }
        return mosaic(filtered, Reducer::Median);
    };

    const Raster drop =
        map_binary(epoch_db(pre_scenes), epoch_db(post_scenes), BinaryOp::Sub);

    FloodMask mask(target, MaskState::NoObs);
    const double threshold = params.diff_db_threshold;
    parallel_for(target.cell_count(), [&](std::int64_t i0, std::int64_t i1) {
        const double* d = drop.data();
        auto st = mask.states();
        for (std::int64_t i = i0; i < i1; ++i) {
            if (std::isnan(d[i])) continue;
            st[i] = d[i] >= threshold ? MaskState::Flooded : MaskState::Dry;
        }
    });

    // Optional refinement inputs may arrive on their own grids.
    SarParams aligned_params = params;
    if (aligned_params.permanent_water) {
        aligned_params.permanent_water =
            align(*aligned_params.permanent_water, target, ResampleMethod::Nearest);
    }
    if (aligned_params.slope_mask) {
        aligned_params.slope_mask =
            align(*aligned_params.slope_mask, target, ResampleMethod::Nearest);
    }
    FloodMask refined = refine_mask(mask, aligned_params);

    refined.provenance().insert(to_string(Sensor::Sentinel1));
    const auto [lo, hi] = std::minmax_element(
        post_scenes.begin(), post_scenes.end(),
        [](const SarScene& a, const SarScene& b) { return a.date < b.date; });
    refined.date_range() = DateRange{lo->date, hi->date};
    return refined;
}

}  // namespace floodfuse

#include "floodfuse/optical.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "floodfuse/errors.hpp"
#include "floodfuse/kernels.hpp"
#include "floodfuse/parallel.hpp"
#include "floodfuse/raster_ops.hpp"

namespace floodfuse {

void OpticalParams::validate() const {
    if (!(ndwi_diff_threshold > 0.0 && ndwi_diff_threshold <= 2.0)) {
        throw InvalidArgumentError("ndwi_diff_threshold must lie in (0, 2]");
    }
    if (sensor == Sensor::Sentinel1) {
        throw InvalidArgumentError("optical mapping needs an optical sensor");
    }
}

Raster ndwi(const Raster& green, const Raster& nir) {
    if (!(green.grid() == nir.grid())) {
        throw GridMismatchError("GREEN and NIR are not on the same grid");
    }
    Raster out(green.grid(), 0.0);
    const auto& k = kernels::active();
    parallel_for(green.grid().cell_count(), [&](std::int64_t i0, std::int64_t i1) {
        k.normalized_diff(green.data() + i0, nir.data() + i0, out.data() + i0,
                          static_cast<std::size_t>(i1 - i0));
    });
    return out;
}

namespace {

// Finest (smallest pixel) grid across the scenes; first one wins ties.
const GeoGrid* finest_grid(std::span<const OpticalScene> a,
                           std::span<const OpticalScene> b) {
    const GeoGrid* best = nullptr;
    for (const auto* scenes : {&a, &b}) {
        for (const OpticalScene& s : *scenes) {
            if (!best || s.green.grid().pixel_dx < best->pixel_dx) {
                best = &s.green.grid();
            }
        }
    }
    return best;
}

}  // namespace

FloodMask optical_flood_mask(std::span<const OpticalScene> pre_scenes,
                             std::span<const OpticalScene> post_scenes,
                             const OpticalParams& params) {
    params.validate();
    if (post_scenes.empty() || (pre_scenes.empty() && !params.absolute)) {
        throw InvalidArgumentError("need at least one scene per epoch");
    }

    const GeoGrid target = *finest_grid(pre_scenes, post_scenes);

    std::vector<Raster> clouds;
    auto epoch_ndwi = [&](std::span<const OpticalScene> scenes) {
        std::vector<Raster> indexed;
        indexed.reserve(scenes.size());
        for (const OpticalScene& s : scenes) {
            const Raster g = align(s.green, target, ResampleMethod::Bilinear);
            const Raster n = align(s.nir, target, ResampleMethod::Bilinear);
            indexed.push_back(ndwi(g, n));
            if (s.cloud_mask) {
                clouds.push_back(align(*s.cloud_mask, target, ResampleMethod::Nearest));
            }
        }
        return mosaic(indexed, Reducer::Median);
    };

    const Raster post = epoch_ndwi(post_scenes);
    Raster diff = params.absolute
                      ? post
                      : map_binary(post, epoch_ndwi(pre_scenes), BinaryOp::Sub);

    FloodMask mask(target, MaskState::NoObs);
    const double threshold = params.ndwi_diff_threshold;
    parallel_for(target.cell_count(), [&](std::int64_t i0, std::int64_t i1) {
        const double* d = diff.data();
        auto st = mask.states();
        for (std::int64_t i = i0; i < i1; ++i) {
            if (std::isnan(d[i])) continue;  // stays NO_OBS
            st[i] = d[i] >= threshold ? MaskState::Flooded : MaskState::Dry;
        }
        for (const Raster& c : clouds) {
            const double* cm = c.data();
            for (std::int64_t i = i0; i < i1; ++i) {
                if (cm[i] == 1.0) st[i] = MaskState::NoObs;
            }
        }
    });

    mask.provenance().insert(to_string(params.sensor));
    const auto [lo, hi] = std::minmax_element(
        post_scenes.begin(), post_scenes.end(),
        [](const OpticalScene& a, const OpticalScene& b) { return a.date < b.date; });
    mask.date_range() = DateRange{lo->date, hi->date};
    return mask;
}

}  // namespace floodfuse

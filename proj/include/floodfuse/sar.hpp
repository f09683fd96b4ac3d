#pragma once

#include <optional>
#include <span>

#include "floodfuse/raster.hpp"

namespace floodfuse {

enum class SpeckleKind { Mean, Median };

struct SarParams {
    int speckle_window = 5;  // odd, >= 3
    SpeckleKind speckle_kind = SpeckleKind::Median;
    /// Backscatter drop (pre minus post, dB) that marks new water.
    double diff_db_threshold = 1.25;
    /// 8-connected flooded clusters below this size are dropped as noise.
    int min_cluster_px = 8;
    std::optional<Raster> permanent_water;  // 1 = standing water before the event
    std::optional<Raster> slope_mask;       // 1 = terrain too steep to pond

    void validate() const;
};

/// One SAR acquisition in linear power.
struct SarScene {
    Date date;
    Polarization polarization = Polarization::VH;
    Raster backscatter;
};

/// 10*log10(x); nonpositive and nodata cells stay nodata.
Raster to_db(const Raster& linear);

/// Focal mean/median over the speckle window, truncated at edges, skipping
/// nodata neighbors; an all-nodata window stays nodata.
Raster speckle_filter(const Raster& raster, const SarParams& params);

/// Change detection on dB backscatter: filter each scene, median-mosaic the
/// epochs, difference pre minus post (water darkens the image, so a positive
/// drop means flooding), threshold, then refine_mask.
FloodMask sar_flood_mask(std::span<const SarScene> pre_scenes,
                         std::span<const SarScene> post_scenes,
                         const SarParams& params);

/// Post-processing: drop small clusters, clear permanent water and steep
/// slopes back to DRY. NO_OBS cells are never touched and nothing ever
/// becomes FLOODED here.
FloodMask refine_mask(const FloodMask& mask, const SarParams& params);

}  // namespace floodfuse

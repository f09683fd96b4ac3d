#pragma once

#include <optional>
#include <span>

#include "floodfuse/raster.hpp"

namespace floodfuse {

struct OpticalParams {
    /// Water gain needed on the post-minus-pre NDWI difference before a cell
    /// counts as flooded. The index difference lives in [-2, 2].
    double ndwi_diff_threshold = 0.20;
    /// Threshold the post-event NDWI directly instead of the difference.
    bool absolute = false;
    Sensor sensor = Sensor::Sentinel2;

    void validate() const;
};

/// One optical acquisition, bands already loaded. cloud_mask uses 1 = cloud.
struct OpticalScene {
    Date date;
    Raster green;
    Raster nir;
    std::optional<Raster> cloud_mask;
};

/// (g - n) / (g + n), nodata where the sum is zero. Expects reflectances >= 0.
Raster ndwi(const Raster& green, const Raster& nir);

/// NDWI change detection: median-mosaic the per-scene NDWI for each epoch,
/// difference them, threshold. Cells under cloud in any used scene, or with
/// no valid difference, come out NO_OBS. In absolute mode the pre epoch may
/// be empty and the post mosaic is thresholded directly.
FloodMask optical_flood_mask(std::span<const OpticalScene> pre_scenes,
                             std::span<const OpticalScene> post_scenes,
                             const OpticalParams& params);

}  // namespace floodfuse

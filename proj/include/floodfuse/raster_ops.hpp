#pragma once

#include <span>
#include <vector>

#include "floodfuse/raster.hpp"

namespace floodfuse {

enum class ResampleMethod { Nearest, Bilinear };

/// Resamples `source` onto `target` by pixel-center lookup. Both grids must
/// share a CRS; reprojection is out of scope. Cells whose center falls
/// outside the source extent become nodata. Aligning a raster to its own
/// grid returns it unchanged for either method.
Raster align(const Raster& source, const GeoGrid& target, ResampleMethod method);

/// Mask variant; always nearest-neighbor, out-of-coverage cells are NO_OBS.
FloodMask align_mask(const FloodMask& source, const GeoGrid& target);

enum class Reducer { Mean, Median, Min, Max };

/// Per-cell reduction over the non-nodata inputs; a cell is nodata only
/// where every input is. Grids must match exactly.
Raster mosaic(std::span<const Raster> rasters, Reducer reducer);

enum class BinaryOp { Sub, Add, Div };

/// Cell-wise arithmetic with absorbing nodata; division by zero is nodata.
Raster map_binary(const Raster& a, const Raster& b, BinaryOp op);

}  // namespace floodfuse

#pragma once

#include <cstdint>
#include <vector>

#include "floodfuse/raster.hpp"

namespace floodfuse::detail {

/// Labels 8-connected FLOODED regions: labels[i] >= 0 for flooded cells,
/// -1 elsewhere. Returns the per-label cell counts.
std::vector<std::int64_t> label_flooded_components(const FloodMask& mask,
                                                   std::vector<std::int32_t>& labels);

}  // namespace floodfuse::detail

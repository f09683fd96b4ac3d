#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "floodfuse/geo.hpp"

namespace floodfuse {

/// Single-band grid of doubles anchored to a GeoGrid.
///
/// Missing observations are held as quiet NaN regardless of what sentinel the
/// source file used; `nodata()` remembers that sentinel so files round-trip.
/// Arithmetic then absorbs nodata for free, and every kernel tests validity
/// with a single self-comparison.
class Raster {
public:
    Raster() = default;

    Raster(GeoGrid grid, double fill);

    /// Takes ownership of `samples` (row-major, grid.cell_count() long) and
    /// canonicalizes any sample equal to `nodata` to NaN.
    Raster(GeoGrid grid, std::vector<double> samples,
           std::optional<double> nodata = std::nullopt);

    const GeoGrid& grid() const { return grid_; }
    int width() const { return grid_.width; }
    int height() const { return grid_.height; }

    double at(int col, int row) const {
        return samples_[static_cast<std::size_t>(row) * grid_.width + col];
    }
    void set(int col, int row, double v) {
        samples_[static_cast<std::size_t>(row) * grid_.width + col] = v;
    }

    std::span<const double> samples() const { return samples_; }
    std::span<double> samples() { return samples_; }
    const double* data() const { return samples_.data(); }
    double* data() { return samples_.data(); }

    /// The sentinel to materialize for NaN cells when writing to disk.
    std::optional<double> nodata() const { return nodata_; }
    void set_nodata(std::optional<double> v) { nodata_ = v; }

    static bool is_valid(double v) { return !std::isnan(v); }

    /// Sample-wise bitwise equality (NaN == NaN) plus grid and nodata equality.
    bool identical_to(const Raster& o) const;

private:
    GeoGrid grid_;
    std::vector<double> samples_;
    std::optional<double> nodata_;
};

enum class MaskState : std::uint8_t {
    Dry = 0,
    Flooded = 1,
    NoObs = 255,
};

/// Ternary flood map plus where it came from.
class FloodMask {
public:
    FloodMask() = default;
    FloodMask(GeoGrid grid, MaskState fill = MaskState::NoObs);
    FloodMask(GeoGrid grid, std::vector<MaskState> states);

    const GeoGrid& grid() const { return grid_; }
    int width() const { return grid_.width; }
    int height() const { return grid_.height; }

    MaskState at(int col, int row) const {
        return states_[static_cast<std::size_t>(row) * grid_.width + col];
    }
    void set(int col, int row, MaskState s) {
        states_[static_cast<std::size_t>(row) * grid_.width + col] = s;
    }

    std::span<const MaskState> states() const { return states_; }
    std::span<MaskState> states() { return states_; }

    std::int64_t count(MaskState s) const;

    std::set<std::string>& provenance() { return provenance_; }
    const std::set<std::string>& provenance() const { return provenance_; }

    std::optional<DateRange>& date_range() { return date_range_; }
    const std::optional<DateRange>& date_range() const { return date_range_; }

    bool identical_to(const FloodMask& o) const {
        return grid_ == o.grid_ && states_ == o.states_;
    }

private:
    GeoGrid grid_;
    std::vector<MaskState> states_;
    std::set<std::string> provenance_;
    std::optional<DateRange> date_range_;
};

/// 0/1/255 encoding used for 8-bit mask files.
Raster mask_to_raster(const FloodMask& mask);

/// Inverse of mask_to_raster; values other than 0/1/255/nodata are an error.
FloodMask mask_from_raster(const Raster& raster);

}  // namespace floodfuse

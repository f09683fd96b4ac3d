#include "floodfuse/raster.hpp"

#include <algorithm>
#include <cstring>
#include <limits>

#include "floodfuse/errors.hpp"

namespace floodfuse {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

Raster::Raster(GeoGrid grid, double fill) : grid_(std::move(grid)) {
    if (!grid_.valid()) throw InvalidArgumentError("invalid GeoGrid");
    samples_.assign(static_cast<std::size_t>(grid_.cell_count()), fill);
}

Raster::Raster(GeoGrid grid, std::vector<double> samples,
               std::optional<double> nodata)
    : grid_(std::move(grid)), samples_(std::move(samples)), nodata_(nodata) {
    if (!grid_.valid()) throw InvalidArgumentError("invalid GeoGrid");
    if (samples_.size() != static_cast<std::size_t>(grid_.cell_count())) {
        throw InvalidArgumentError("sample count does not match grid");
    }
    if (nodata_ && !std::isnan(*nodata_)) {
        const double sentinel = *nodata_;
        for (double& v : samples_) {
            if (v == sentinel) v = kNan;
        }
    }
}

bool Raster::identical_to(const Raster& o) const {
    if (!(grid_ == o.grid_) || nodata_ != o.nodata_) return false;
    if (samples_.size() != o.samples_.size()) return false;
    return std::memcmp(samples_.data(), o.samples_.data(),
                       samples_.size() * sizeof(double)) == 0;
}

FloodMask::FloodMask(GeoGrid grid, MaskState fill) : grid_(std::move(grid)) {
    if (!grid_.valid()) throw InvalidArgumentError("invalid GeoGrid");
    states_.assign(static_cast<std::size_t>(grid_.cell_count()), fill);
}

FloodMask::FloodMask(GeoGrid grid, std::vector<MaskState> states)
    : grid_(std::move(grid)), states_(std::move(states)) {
    if (!grid_.valid()) throw InvalidArgumentError("invalid GeoGrid");
    if (states_.size() != static_cast<std::size_t>(grid_.cell_count())) {
        throw InvalidArgumentError("state count does not match grid");
    }
}

std::int64_t FloodMask::count(MaskState s) const {
    return std::count(states_.begin(), states_.end(), s);
}

Raster mask_to_raster(const FloodMask& mask) {
    std::vector<double> vals(mask.states().size());
    const auto st = mask.states();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        vals[i] = st[i] == MaskState::NoObs
                      ? std::numeric_limits<double>::quiet_NaN()
                      : static_cast<double>(st[i]);
    }
    Raster r(mask.grid(), std::move(vals));
    r.set_nodata(255.0);
    return r;
}

FloodMask mask_from_raster(const Raster& raster) {
    std::vector<MaskState> st(raster.samples().size());
    const auto vals = raster.samples();
    for (std::size_t i = 0; i < st.size(); ++i) {
        const double v = vals[i];
        if (std::isnan(v) || v == 255.0) {
            st[i] = MaskState::NoObs;
        } else if (v == 0.0) {
            st[i] = MaskState::Dry;
        } else if (v == 1.0) {
            st[i] = MaskState::Flooded;
        } else {
            throw FormatError("mask raster holds a value other than 0/1/255");
        }
    }
    return FloodMask(raster.grid(), std::move(st));
}

}  // namespace floodfuse

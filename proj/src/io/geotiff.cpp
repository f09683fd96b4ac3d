// Self-contained GeoTIFF I/O: classic TIFF 6.0, strip-organized, with the
// GeoTIFF and GDAL tags this pipeline needs. Reading accepts both byte
// orders, chunky multi-band files, and none/deflate compression; writing
// always emits little-endian uncompressed single-band files so outputs are
// byte-stable.

#include "floodfuse/geotiff.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <vector>

#include "floodfuse/errors.hpp"
#include "json.hpp"

namespace floodfuse {

namespace {

// ---- tag and type constants -------------------------------------------------

enum : std::uint16_t {
    kTagImageWidth = 256,
    kTagImageLength = 257,
    kTagBitsPerSample = 258,
    kTagCompression = 259,
    kTagPhotometric = 262,
    kTagImageDescription = 270,
    kTagStripOffsets = 273,
    kTagSamplesPerPixel = 277,
    kTagRowsPerStrip = 278,
    kTagStripByteCounts = 279,
    kTagPlanarConfig = 284,
    kTagPredictor = 317,
    kTagTileWidth = 322,
    kTagSampleFormat = 339,
    kTagModelPixelScale = 33550,
    kTagModelTiepoint = 33922,
    kTagModelTransformation = 34264,
    kTagGeoKeyDirectory = 34735,
    kTagGeoAsciiParams = 34737,
    kTagGdalNodata = 42113,
};

enum : std::uint16_t {
    kTypeByte = 1,
    kTypeAscii = 2,
    kTypeShort = 3,
    kTypeLong = 4,
    kTypeRational = 5,
    kTypeSByte = 6,
    kTypeSShort = 8,
    kTypeSLong = 9,
    kTypeFloat = 11,
    kTypeDouble = 12,
};

std::size_t type_size(std::uint16_t type) {
    switch (type) {
        case kTypeByte:
        case kTypeAscii:
        case kTypeSByte: return 1;
        case kTypeShort:
        case kTypeSShort: return 2;
        case kTypeLong:
        case kTypeSLong:
        case kTypeFloat: return 4;
        case kTypeRational:
        case kTypeDouble: return 8;
        default: return 0;
    }
}

// ---- reading ----------------------------------------------------------------

struct IfdEntry {
    std::uint16_t type = 0;
    std::uint32_t count = 0;
    std::size_t data_offset = 0;  // into the file buffer
};

class TiffFile {
public:
    explicit TiffFile(const std::string& path) : path_(path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open raster file: " + path);
        in.seekg(0, std::ios::end);
        const auto size = in.tellg();
        in.seekg(0);
        bytes_.resize(static_cast<std::size_t>(size));
        in.read(reinterpret_cast<char*>(bytes_.data()),
                static_cast<std::streamsize>(bytes_.size()));
        if (!in) throw IoError("cannot read raster file: " + path);

        if (bytes_.size() < 8) throw FormatError(path + ": not a TIFF file");
        if (bytes_[0] == 'I' && bytes_[1] == 'I') {
            swap_ = false;
        } else if (bytes_[0] == 'M' && bytes_[1] == 'M') {
            swap_ = true;
        } else {
            throw FormatError(path + ": not a TIFF file");
        }
        if (u16(2) != 42) throw FormatError(path + ": not a TIFF file");
        parse_ifd(u32(4));
    }

    const std::string& path() const { return path_; }

    bool has(std::uint16_t tag) const { return entries_.count(tag) > 0; }

    std::uint32_t scalar_u32(std::uint16_t tag) const {
        const auto v = values_u32(tag);
        if (v.empty()) throw FormatError(path_ + ": empty tag " + std::to_string(tag));
        return v[0];
    }

    std::uint32_t scalar_u32_or(std::uint16_t tag, std::uint32_t fallback) const {
        return has(tag) ? scalar_u32(tag) : fallback;
    }

    std::vector<std::uint32_t> values_u32(std::uint16_t tag) const {
        const IfdEntry& e = entry(tag);
        std::vector<std::uint32_t> out(e.count);
        for (std::uint32_t i = 0; i < e.count; ++i) {
            const std::size_t off = e.data_offset + i * type_size(e.type);
            switch (e.type) {
                case kTypeByte: out[i] = bytes_.at(off); break;
                case kTypeShort: out[i] = u16(off); break;
                case kTypeLong: out[i] = u32(off); break;
                default:
                    throw FormatError(path_ + ": unexpected type for tag " +
                                      std::to_string(tag));
            }
        }
        return out;
    }

    std::vector<double> values_f64(std::uint16_t tag) const {
        const IfdEntry& e = entry(tag);
        if (e.type != kTypeDouble) {
            throw FormatError(path_ + ": expected DOUBLE values in tag " +
                              std::to_string(tag));
        }
        std::vector<double> out(e.count);
        for (std::uint32_t i = 0; i < e.count; ++i) out[i] = f64(e.data_offset + i * 8);
        return out;
    }

    std::string ascii(std::uint16_t tag) const {
        const IfdEntry& e = entry(tag);
        std::string s(reinterpret_cast<const char*>(bytes_.data()) + e.data_offset,
                      e.count);
        while (!s.empty() && s.back() == '\0') s.pop_back();
        return s;
    }

    std::uint16_t u16(std::size_t off) const {
        check(off, 2);
        std::uint16_t v;
        std::memcpy(&v, bytes_.data() + off, 2);
        return swap_ ? static_cast<std::uint16_t>((v >> 8) | (v << 8)) : v;
    }

    std::uint32_t u32(std::size_t off) const {
        check(off, 4);
        std::uint32_t v;
        std::memcpy(&v, bytes_.data() + off, 4);
        return swap_ ? __builtin_bswap32(v) : v;
    }

    double f64(std::size_t off) const {
        check(off, 8);
        std::uint64_t v;
        std::memcpy(&v, bytes_.data() + off, 8);
        if (swap_) v = __builtin_bswap64(v);
        double d;
        std::memcpy(&d, &v, 8);
        return d;
    }

    float f32(std::size_t off) const {
        std::uint32_t v = u32(off);
        float f;
        std::memcpy(&f, &v, 4);
        return f;
    }

    const std::uint8_t* raw(std::size_t off, std::size_t len) const {
        check(off, len);
        return bytes_.data() + off;
    }

    bool swapped() const { return swap_; }

private:
    const IfdEntry& entry(std::uint16_t tag) const {
        auto it = entries_.find(tag);
        if (it == entries_.end()) {
            throw FormatError(path_ + ": missing TIFF tag " + std::to_string(tag));
        }
        return it->second;
    }

    void parse_ifd(std::size_t off) {
        const std::uint16_t n = u16(off);
        for (std::uint16_t i = 0; i < n; ++i) {
            const std::size_t e = off + 2 + static_cast<std::size_t>(i) * 12;
            IfdEntry ent;
            const std::uint16_t tag = u16(e);
            ent.type = u16(e + 2);
            ent.count = u32(e + 4);
            const std::size_t total = ent.count * type_size(ent.type);
            ent.data_offset = total <= 4 ? e + 8 : u32(e + 8);
            check(ent.data_offset, total);
            entries_[tag] = ent;
        }
    }

    void check(std::size_t off, std::size_t len) const {
        if (off + len > bytes_.size()) {
            throw FormatError(path_ + ": truncated TIFF");
        }
    }

    std::string path_;
    std::vector<std::uint8_t> bytes_;
    bool swap_ = false;
    std::map<std::uint16_t, IfdEntry> entries_;
};

GeoGrid grid_from(const TiffFile& f, int width, int height) {
    GeoGrid g;
    g.width = width;
    g.height = height;

    if (f.has(kTagModelTransformation)) {
        const auto m = f.values_f64(kTagModelTransformation);
        if (m.size() < 16 || m[1] != 0.0 || m[4] != 0.0 || m[0] <= 0.0 || m[5] >= 0.0) {
            throw GeorefError(f.path() + ": rotated or degenerate geotransform");
        }
        g.pixel_dx = m[0];
        g.pixel_dy = -m[5];
        g.origin_x = m[3];
        g.origin_y = m[7];
    } else if (f.has(kTagModelPixelScale) && f.has(kTagModelTiepoint)) {
        const auto scale = f.values_f64(kTagModelPixelScale);
        const auto tie = f.values_f64(kTagModelTiepoint);
        if (scale.size() < 2 || tie.size() < 6 || scale[0] <= 0.0 || scale[1] <= 0.0) {
            throw GeorefError(f.path() + ": degenerate geotransform");
        }
        g.pixel_dx = scale[0];
        g.pixel_dy = scale[1];
        g.origin_x = tie[3] - tie[0] * scale[0];
        g.origin_y = tie[4] + tie[1] * scale[1];
    } else {
        throw GeorefError(f.path() + ": no geotransform (file is not georeferenced)");
    }

    if (f.has(kTagGeoKeyDirectory)) {
        const auto keys = f.values_u32(kTagGeoKeyDirectory);
        std::uint32_t model = 0, geographic = 0, projected = 0;
        for (std::size_t i = 4; i + 3 < keys.size(); i += 4) {
            const std::uint32_t id = keys[i], loc = keys[i + 1], value = keys[i + 3];
            if (loc != 0) continue;  // only inline SHORT keys are relevant
            if (id == 1024) model = value;
            if (id == 2048) geographic = value;
            if (id == 3072) projected = value;
        }
        std::uint32_t code = model == 1 ? projected : geographic;
        if (code == 0) code = projected ? projected : geographic;
        if (code != 0 && code != 32767) g.crs = "EPSG:" + std::to_string(code);
    }
    return g;
}

struct Layout {
    int width = 0;
    int height = 0;
    int bands = 1;
    int bits = 0;
    int sample_format = 1;  // 1 unsigned, 2 signed, 3 float
    std::uint32_t rows_per_strip = 0;
    std::uint32_t compression = 1;
    std::uint32_t predictor = 1;
    std::vector<std::uint32_t> strip_offsets;
    std::vector<std::uint32_t> strip_byte_counts;
};

Layout layout_from(const TiffFile& f) {
    Layout lay;
    if (f.has(kTagTileWidth)) {
        throw FormatError(f.path() + ": tiled TIFF layout is not supported");
    }
    lay.width = static_cast<int>(f.scalar_u32(kTagImageWidth));
    lay.height = static_cast<int>(f.scalar_u32(kTagImageLength));
    lay.bands = static_cast<int>(f.scalar_u32_or(kTagSamplesPerPixel, 1));
    lay.compression = f.scalar_u32_or(kTagCompression, 1);
    lay.predictor = f.scalar_u32_or(kTagPredictor, 1);
    if (lay.compression != 1 && lay.compression != 8 && lay.compression != 32946) {
        throw FormatError(f.path() + ": unsupported TIFF compression " +
                          std::to_string(lay.compression));
    }
    if (lay.predictor != 1 && lay.predictor != 2) {
        throw FormatError(f.path() + ": unsupported TIFF predictor " +
                          std::to_string(lay.predictor));
    }
    if (f.scalar_u32_or(kTagPlanarConfig, 1) != 1 && lay.bands > 1) {
        throw FormatError(f.path() + ": planar multi-band TIFF is not supported");
    }
    const auto bits = f.values_u32(kTagBitsPerSample);
    for (auto b : bits) {
        if (b != bits[0]) {
            throw FormatError(f.path() + ": mixed per-band bit depths");
        }
    }
    lay.bits = static_cast<int>(bits.at(0));
    if (f.has(kTagSampleFormat)) {
        lay.sample_format = static_cast<int>(f.values_u32(kTagSampleFormat).at(0));
    }
    const bool ok = (lay.sample_format == 1 && (lay.bits == 8 || lay.bits == 16 ||
                                                lay.bits == 32)) ||
                    (lay.sample_format == 2 && (lay.bits == 8 || lay.bits == 16 ||
                                                lay.bits == 32)) ||
                    (lay.sample_format == 3 && (lay.bits == 32 || lay.bits == 64));
    if (!ok) {
        throw FormatError(f.path() + ": unsupported sample type (bits=" +
                          std::to_string(lay.bits) + ", format=" +
                          std::to_string(lay.sample_format) + ")");
    }
    lay.strip_offsets = f.values_u32(kTagStripOffsets);
    lay.strip_byte_counts = f.values_u32(kTagStripByteCounts);
    if (lay.strip_offsets.size() != lay.strip_byte_counts.size() ||
        lay.strip_offsets.empty()) {
        throw FormatError(f.path() + ": inconsistent strip tables");
    }
    lay.rows_per_strip = f.scalar_u32_or(kTagRowsPerStrip,
                                         static_cast<std::uint32_t>(lay.height));
    return lay;
}

std::vector<std::uint8_t> inflate_strip(const std::uint8_t* src, std::size_t len,
                                        std::size_t expected,
                                        const std::string& path) {
    std::vector<std::uint8_t> out(expected);
    uLongf dest_len = static_cast<uLongf>(expected);
    const int rc = uncompress(out.data(), &dest_len, src, static_cast<uLong>(len));
    if (rc != Z_OK || dest_len != expected) {
        throw FormatError(path + ": corrupt deflate strip");
    }
    return out;
}

void undo_horizontal_predictor(std::uint8_t* row, int width, int bands,
                               int bits, int sample_format) {
    const int pixels = width;
    if (bits == 8) {
        for (int x = 1; x < pixels; ++x) {
            for (int b = 0; b < bands; ++b) {
                row[x * bands + b] =
                    static_cast<std::uint8_t>(row[x * bands + b] +
                                              row[(x - 1) * bands + b]);
            }
        }
    } else if (bits == 16) {
        auto* r = reinterpret_cast<std::uint16_t*>(row);
        for (int x = 1; x < pixels; ++x) {
            for (int b = 0; b < bands; ++b) {
                r[x * bands + b] = static_cast<std::uint16_t>(r[x * bands + b] +
                                                              r[(x - 1) * bands + b]);
            }
        }
    } else if (bits == 32 && sample_format != 3) {
        auto* r = reinterpret_cast<std::uint32_t*>(row);
        for (int x = 1; x < pixels; ++x) {
            for (int b = 0; b < bands; ++b) {
                r[x * bands + b] += r[(x - 1) * bands + b];
            }
        }
    } else {
        throw FormatError("predictor 2 with floating-point samples is not supported");
    }
}

double sample_to_double(const std::uint8_t* p, int bits, int sample_format,
                        bool swap) {
    auto load16 = [&]() -> std::uint16_t {
        std::uint16_t v;
        std::memcpy(&v, p, 2);
        return swap ? static_cast<std::uint16_t>((v >> 8) | (v << 8)) : v;
    };
    auto load32 = [&]() -> std::uint32_t {
        std::uint32_t v;
        std::memcpy(&v, p, 4);
        return swap ? __builtin_bswap32(v) : v;
    };
    switch (sample_format) {
        case 1:
            if (bits == 8) return *p;
            if (bits == 16) return load16();
            return load32();
        case 2:
            if (bits == 8) return static_cast<std::int8_t>(*p);
            if (bits == 16) return static_cast<std::int16_t>(load16());
            return static_cast<std::int32_t>(load32());
        default: {
            if (bits == 32) {
                const std::uint32_t v = load32();
                float f;
                std::memcpy(&f, &v, 4);
                return f;
            }
            std::uint64_t v;
            std::memcpy(&v, p, 8);
            if (swap) v = __builtin_bswap64(v);
            double d;
            std::memcpy(&d, &v, 8);
            return d;
        }
    }
}

std::optional<double> nodata_from(const TiffFile& f) {
    if (!f.has(kTagGdalNodata)) return std::nullopt;
    const std::string s = f.ascii(kTagGdalNodata);
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// ---- writing ----------------------------------------------------------------

class TiffBuilder {
public:
    void put_u8(std::uint8_t v) { buf_.push_back(v); }
    void put_u16(std::uint16_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v));
        buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    void put_u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void put_f64(double d) {
        std::uint64_t v;
        std::memcpy(&v, &d, 8);
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void pad_even() {
        if (buf_.size() % 2) buf_.push_back(0);
    }
    std::size_t size() const { return buf_.size(); }
    void patch_u32(std::size_t at, std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
    }
    const std::vector<std::uint8_t>& bytes() const { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

struct PendingEntry {
    std::uint16_t tag;
    std::uint16_t type;
    std::uint32_t count;
    std::vector<std::uint8_t> payload;  // little-endian raw values
};

void append_entry_values(std::vector<PendingEntry>& entries, std::uint16_t tag,
                         std::uint16_t type,
                         const std::vector<std::uint32_t>& values) {
    PendingEntry e{tag, type, static_cast<std::uint32_t>(values.size()), {}};
    for (auto v : values) {
        if (type == kTypeShort) {
            e.payload.push_back(static_cast<std::uint8_t>(v));
            e.payload.push_back(static_cast<std::uint8_t>(v >> 8));
        } else {
            for (int i = 0; i < 4; ++i) e.payload.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    entries.push_back(std::move(e));
}

void append_entry_doubles(std::vector<PendingEntry>& entries, std::uint16_t tag,
                          const std::vector<double>& values) {
    PendingEntry e{tag, kTypeDouble, static_cast<std::uint32_t>(values.size()), {}};
    for (double d : values) {
        std::uint64_t v;
        std::memcpy(&v, &d, 8);
        for (int i = 0; i < 8; ++i) e.payload.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    entries.push_back(std::move(e));
}

void append_entry_ascii(std::vector<PendingEntry>& entries, std::uint16_t tag,
                        const std::string& s) {
    PendingEntry e{tag, kTypeAscii, static_cast<std::uint32_t>(s.size() + 1), {}};
    e.payload.assign(s.begin(), s.end());
    e.payload.push_back(0);
    entries.push_back(std::move(e));
}

std::string format_nodata(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool crs_is_geographic_epsg(int code) {
    // EPSG geographic 2D CRS codes live in the 4000-4999 block.
    return code >= 4000 && code <= 4999;
}

std::optional<int> epsg_code(const std::string& crs) {
    if (crs.rfind("EPSG:", 0) != 0) return std::nullopt;
    try {
        return std::stoi(crs.substr(5));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

RasterFileInfo probe_raster(const std::string& path) {
    TiffFile f(path);
    const Layout lay = layout_from(f);
    RasterFileInfo info;
    info.grid = grid_from(f, lay.width, lay.height);
    info.bands = lay.bands;
    info.nodata = nodata_from(f);
    if (f.has(kTagImageDescription)) info.description = f.ascii(kTagImageDescription);
    return info;
}

Raster read_raster(const std::string& path, int band) {
    TiffFile f(path);
    const Layout lay = layout_from(f);
    if (band < 1 || band > lay.bands) {
        throw InvalidArgumentError(path + ": band " + std::to_string(band) +
                                   " out of range (file has " +
                                   std::to_string(lay.bands) + ")");
    }
    GeoGrid grid = grid_from(f, lay.width, lay.height);

    const int bytes_per_sample = lay.bits / 8;
    const std::size_t row_stride =
        static_cast<std::size_t>(lay.width) * lay.bands * bytes_per_sample;
    std::vector<double> samples(static_cast<std::size_t>(lay.width) * lay.height);

    int row = 0;
    for (std::size_t s = 0; s < lay.strip_offsets.size(); ++s) {
        const int rows_here = std::min<int>(static_cast<int>(lay.rows_per_strip),
                                            lay.height - row);
        if (rows_here <= 0) break;
        const std::size_t expect = row_stride * rows_here;
        std::vector<std::uint8_t> decoded;
        const std::uint8_t* data;
        if (lay.compression == 1) {
            data = f.raw(lay.strip_offsets[s], expect);
        } else {
            decoded = inflate_strip(f.raw(lay.strip_offsets[s], lay.strip_byte_counts[s]),
                                    lay.strip_byte_counts[s], expect, path);
            data = decoded.data();
        }
        std::vector<std::uint8_t> predicted;
        if (lay.predictor == 2) {
            predicted.assign(data, data + expect);
            for (int r = 0; r < rows_here; ++r) {
                undo_horizontal_predictor(predicted.data() + r * row_stride,
                                          lay.width, lay.bands, lay.bits,
                                          lay.sample_format);
            }
            data = predicted.data();
        }
        for (int r = 0; r < rows_here; ++r) {
            const std::uint8_t* src = data + r * row_stride +
                                      (band - 1) * bytes_per_sample;
            double* dst = samples.data() + static_cast<std::size_t>(row + r) * lay.width;
            for (int x = 0; x < lay.width; ++x) {
                dst[x] = sample_to_double(src, lay.bits, lay.sample_format,
                                          f.swapped());
                src += static_cast<std::size_t>(lay.bands) * bytes_per_sample;
            }
        }
        row += rows_here;
    }
    if (row != lay.height) throw FormatError(path + ": strip table covers too few rows");

    return Raster(std::move(grid), std::move(samples), nodata_from(f));
}

void write_raster(const Raster& raster, const std::string& path,
                  GeoTiffDType dtype, const std::string& description) {
    const GeoGrid& g = raster.grid();
    if (!g.valid() || !std::isfinite(g.origin_x) || !std::isfinite(g.origin_y) ||
        !std::isfinite(g.pixel_dx) || !std::isfinite(g.pixel_dy)) {
        throw InvalidArgumentError("grid is not encodable as a geotransform");
    }

    const int bytes_per_sample = dtype == GeoTiffDType::F64 ? 8 : 1;
    const std::size_t row_bytes = static_cast<std::size_t>(g.width) * bytes_per_sample;
    const std::uint32_t rows_per_strip = static_cast<std::uint32_t>(
        std::clamp<std::size_t>((64 * 1024) / std::max<std::size_t>(row_bytes, 1), 1,
                                static_cast<std::size_t>(g.height)));
    const std::uint32_t strip_count =
        (g.height + rows_per_strip - 1) / rows_per_strip;

    TiffBuilder b;
    b.put_u8('I');
    b.put_u8('I');
    b.put_u16(42);
    const std::size_t ifd_ptr_at = b.size();
    b.put_u32(0);  // patched once the IFD lands

    // strip data
    std::vector<std::uint32_t> offsets, counts;
    const auto vals = raster.samples();
    for (std::uint32_t s = 0; s < strip_count; ++s) {
        const int row0 = static_cast<int>(s * rows_per_strip);
        const int row1 = std::min<int>(g.height, row0 + rows_per_strip);
        offsets.push_back(static_cast<std::uint32_t>(b.size()));
        for (int row = row0; row < row1; ++row) {
            for (int x = 0; x < g.width; ++x) {
                double v = vals[static_cast<std::size_t>(row) * g.width + x];
                if (dtype == GeoTiffDType::F64) {
                    if (std::isnan(v) && raster.nodata() &&
                        !std::isnan(*raster.nodata())) {
                        v = *raster.nodata();
                    }
                    b.put_f64(v);
                } else {
                    double enc = v;
                    if (std::isnan(v)) {
                        if (!raster.nodata()) {
                            throw InvalidArgumentError(
                                "nodata cell but no sentinel set for 8-bit output");
                        }
                        enc = *raster.nodata();
                    }
                    if (!(enc >= 0.0 && enc <= 255.0) || enc != std::floor(enc)) {
                        throw InvalidArgumentError(
                            "sample not encodable as 8-bit: " + std::to_string(v));
                    }
                    b.put_u8(static_cast<std::uint8_t>(enc));
                }
            }
        }
        counts.push_back(static_cast<std::uint32_t>(b.size() - offsets.back()));
    }
    b.pad_even();

    std::vector<PendingEntry> entries;
    append_entry_values(entries, kTagImageWidth, kTypeLong,
                        {static_cast<std::uint32_t>(g.width)});
    append_entry_values(entries, kTagImageLength, kTypeLong,
                        {static_cast<std::uint32_t>(g.height)});
    append_entry_values(entries, kTagBitsPerSample, kTypeShort,
                        {static_cast<std::uint32_t>(bytes_per_sample * 8)});
    append_entry_values(entries, kTagCompression, kTypeShort, {1});
    append_entry_values(entries, kTagPhotometric, kTypeShort, {1});
    if (!description.empty()) {
        append_entry_ascii(entries, kTagImageDescription, description);
    }
    append_entry_values(entries, kTagStripOffsets, kTypeLong, offsets);
    append_entry_values(entries, kTagSamplesPerPixel, kTypeShort, {1});
    append_entry_values(entries, kTagRowsPerStrip, kTypeLong, {rows_per_strip});
    append_entry_values(entries, kTagStripByteCounts, kTypeLong, counts);
    append_entry_values(entries, kTagSampleFormat, kTypeShort,
                        {dtype == GeoTiffDType::F64 ? 3u : 1u});
    append_entry_doubles(entries, kTagModelPixelScale,
                         {g.pixel_dx, g.pixel_dy, 0.0});
    append_entry_doubles(entries, kTagModelTiepoint,
                         {0.0, 0.0, 0.0, g.origin_x, g.origin_y, 0.0});
    if (const auto code = epsg_code(g.crs)) {
        const bool geographic = crs_is_geographic_epsg(*code);
        std::vector<std::uint32_t> keys{1, 1, 0, 3,
                                        1024, 0, 1, geographic ? 2u : 1u,
                                        1025, 0, 1, 1};  // PixelIsArea
        if (geographic) {
            keys.insert(keys.end(), {2048, 0, 1, static_cast<std::uint32_t>(*code)});
        } else {
            keys.insert(keys.end(), {3072, 0, 1, static_cast<std::uint32_t>(*code)});
        }
        append_entry_values(entries, kTagGeoKeyDirectory, kTypeShort, keys);
        append_entry_ascii(entries, kTagGeoAsciiParams, g.crs + "|");
    }
    if (raster.nodata()) {
        append_entry_ascii(entries, kTagGdalNodata, format_nodata(*raster.nodata()));
    }

    std::sort(entries.begin(), entries.end(),
              [](const PendingEntry& a, const PendingEntry& z) { return a.tag < z.tag; });

    // externalize payloads larger than the 4 inline bytes
    std::vector<std::uint32_t> value_words(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.payload.size() <= 4) {
            std::uint32_t w = 0;
            for (std::size_t j = 0; j < e.payload.size(); ++j) {
                w |= static_cast<std::uint32_t>(e.payload[j]) << (8 * j);
            }
            value_words[i] = w;
        } else {
            b.pad_even();
            value_words[i] = static_cast<std::uint32_t>(b.size());
            for (auto byte : e.payload) b.put_u8(byte);
        }
    }

    b.pad_even();
    const std::uint32_t ifd_at = static_cast<std::uint32_t>(b.size());
    b.put_u16(static_cast<std::uint16_t>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        b.put_u16(entries[i].tag);
        b.put_u16(entries[i].type);
        b.put_u32(entries[i].count);
        b.put_u32(value_words[i]);
    }
    b.put_u32(0);  // no next IFD
    b.patch_u32(ifd_ptr_at, ifd_at);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(b.bytes().data()),
              static_cast<std::streamsize>(b.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void write_mask(const FloodMask& mask, const std::string& path) {
    nlohmann::ordered_json meta;
    meta["floodfuse_mask"] = true;
    meta["provenance"] = mask.provenance();
    if (mask.date_range()) {
        meta["date_range"] = {mask.date_range()->start.to_iso(),
                              mask.date_range()->end.to_iso()};
    }
    write_raster(mask_to_raster(mask), path, GeoTiffDType::U8, meta.dump());
}

FloodMask read_mask(const std::string& path) {
    const Raster r = read_raster(path, 1);
    FloodMask mask = mask_from_raster(r);
    const RasterFileInfo info = probe_raster(path);
    bool parsed = false;
    if (!info.description.empty()) {
        const auto meta = nlohmann::json::parse(info.description, nullptr, false);
        if (meta.is_object() && meta.value("floodfuse_mask", false)) {
            for (const auto& p : meta.value("provenance",
                                            std::vector<std::string>{})) {
                mask.provenance().insert(p);
            }
            if (meta.contains("date_range")) {
                mask.date_range() = DateRange{Date::parse(meta["date_range"][0]),
                                              Date::parse(meta["date_range"][1])};
            }
            parsed = !mask.provenance().empty();
        }
    }
    if (!parsed) mask.provenance().insert("UNKNOWN");
    return mask;
}

}  // namespace floodfuse

#pragma once

#include <string>
#include <vector>

namespace floodfuse {

/// Header-and-rows CSV with minimal quoting support; fields keep their
/// verbatim text.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index of `name`; throws FormatError when the header lacks it.
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace floodfuse

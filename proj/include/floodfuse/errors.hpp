#pragma once

#include <stdexcept>
#include <string>

namespace floodfuse {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File missing, unreadable, or unwritable.
class IoError : public Error {
public:
    using Error::Error;
};

/// File exists but is not a format (or format feature) we support.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Raster file carries no usable geotransform.
class GeorefError : public Error {
public:
    using Error::Error;
};

/// Two rasters that must share a GeoGrid do not.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

/// Inputs to one analysis are in different coordinate reference systems.
class CrsMismatchError : public Error {
public:
    using Error::Error;
};

/// A parameter or input value is outside its documented domain.
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// Config-file validation failure; carries the offending field name.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& msg)
        : Error(field + ": " + msg), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

}  // namespace floodfuse

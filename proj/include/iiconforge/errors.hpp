#pragma once

#include <stdexcept>
#include <string>

namespace iiconforge {

/// Base class for all library errors. Catch this to handle any failure
/// raised by iiconforge components.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input file or record does not match its declared format.
class InputError : public Error {
public:
    using Error::Error;
};

/// Configuration is inconsistent or references missing resources.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Write-side I/O failure.
class IoFailure : public Error {
public:
    explicit IoFailure(const std::string& path)
        : Error("i/o failure: " + path), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

} // namespace iiconforge

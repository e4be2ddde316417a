#pragma once

#include <stdexcept>
#include <string>

namespace jndmix {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad arguments, malformed content, broken invariants. CLI exit code 1.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// Filesystem and codec failures. CLI exit code 2.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace jndmix

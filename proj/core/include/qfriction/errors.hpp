#pragma once

#include <stdexcept>
#include <string>

namespace qfriction {

/// Thrown when an iterative numeric procedure fails to converge or a
/// step size underflows. Carries human-readable diagnostics.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a file cannot be opened, read or written.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qfriction

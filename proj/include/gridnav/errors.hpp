#pragma once

#include <stdexcept>
#include <string>

namespace gridnav {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gridnav

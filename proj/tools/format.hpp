#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace photmol::cli {

/// Shortest decimal that parses back to the same double.
inline std::string round_trip(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

}  // namespace photmol::cli

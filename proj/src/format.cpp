#include "zenoscat/format.hpp"

#include <charconv>
#include <cstdio>

namespace zenoscat {

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::string fmt_exact(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace zenoscat

#pragma once

#include <string>

namespace zenoscat {

// 12 significant digits, the CSV convention.
std::string fmt12(double x);
// Shortest text that parses back to the same double.
std::string fmt_exact(double x);

} // namespace zenoscat

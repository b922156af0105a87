#pragma once

#include <string>

namespace tdiff {

/// Shortest locale-independent rendering with 17 significant digits.
std::string format_number(double value);

}  // namespace tdiff

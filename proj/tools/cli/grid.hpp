#pragma once

#include <string>
#include <vector>

namespace tdiff::cli {

/// Parses "lo:hi:n" into n equally spaced points with both endpoints
/// included. Requires n >= 2 and lo < hi; throws std::invalid_argument.
std::vector<double> parse_grid(const std::string& grid);

/// Either the single value, the parsed grid, or an error if both or neither
/// were given.
std::vector<double> points_from(const std::vector<double>& singles, const std::string& grid,
                                const char* name);

}  // namespace tdiff::cli

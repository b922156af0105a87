#include "grid.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace tdiff::cli {

namespace {

template <class T>
T parse_field(const std::string& text, const std::string& grid) {
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("malformed grid '" + grid + "' (expected lo:hi:n)");
    }
    return value;
}

}  // namespace

std::vector<double> parse_grid(const std::string& grid) {
    const auto first = grid.find(':');
    const auto second = first == std::string::npos ? first : grid.find(':', first + 1);
    if (second == std::string::npos || grid.find(':', second + 1) != std::string::npos) {
        throw std::invalid_argument("malformed grid '" + grid + "' (expected lo:hi:n)");
    }
    const double lo = parse_field<double>(grid.substr(0, first), grid);
    const double hi = parse_field<double>(grid.substr(first + 1, second - first - 1), grid);
    const long n = parse_field<long>(grid.substr(second + 1), grid);
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw std::invalid_argument("grid '" + grid + "' needs finite lo < hi");
    }
    if (n < 2) throw std::invalid_argument("grid '" + grid + "' needs n >= 2");
    std::vector<double> points(n);
    for (long i = 0; i < n; ++i) {
        points[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    points.back() = hi;
    return points;
}

std::vector<double> points_from(const std::vector<double>& singles, const std::string& grid,
                                const char* name) {
    if (!singles.empty() && !grid.empty()) {
        throw std::invalid_argument(std::string("give either --") + name + " or --" + name +
                                    "-grid, not both");
    }
    if (!grid.empty()) return parse_grid(grid);
    if (singles.empty()) {
        throw std::invalid_argument(std::string("one of --") + name + " or --" + name +
                                    "-grid is required");
    }
    return singles;
}

}  // namespace tdiff::cli

#include <charconv>
#include <cmath>
#include <string_view>

#include "internal.hpp"

namespace entcost::cli {

namespace {

double parse_number(std::string_view s, const std::string &name) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw UsageError("--" + name + ": cannot parse '" + std::string(s) + "' as a number");
    }
    return v;
}

}  // namespace

std::vector<double> parse_grid(const std::string &text, const std::string &name) {
    if (text.empty()) {
        throw UsageError("--" + name + ": empty grid");
    }
    std::vector<double> out;
    const auto first = text.find(':');
    if (first != std::string::npos) {
        const auto second = text.find(':', first + 1);
        if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
            throw UsageError("--" + name + ": range grids read lo:hi:n");
        }
        const double lo = parse_number(std::string_view(text).substr(0, first), name);
        const double hi = parse_number(std::string_view(text).substr(first + 1, second - first - 1), name);
        const double count = parse_number(std::string_view(text).substr(second + 1), name);
        if (count < 1 || count != std::floor(count) || count > 1e7) {
            throw UsageError("--" + name + ": point count must be a positive integer");
        }
        const auto n = static_cast<long>(count);
        if (n == 1 && lo != hi) {
            throw UsageError("--" + name + ": a single-point range needs lo == hi");
        }
        for (long i = 0; i < n; ++i) {
            out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
        }
        return out;
    }
    std::string_view rest(text);
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(parse_number(rest.substr(0, comma), name));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace entcost::cli

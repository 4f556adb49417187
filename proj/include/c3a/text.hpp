#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace c3a::text {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Fixed-point form with `digits` decimals.
std::string format_fixed(double v, int digits);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

}  // namespace c3a::text

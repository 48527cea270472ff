#pragma once

#include <string>
#include <string_view>

namespace icz {

/// Shortest decimal that parses back to exactly v.
std::string format_double(double v);

/// Full-string decimal parse; rejects trailing junk and non-finite values.
double parse_double(std::string_view text, std::string_view what);

}  // namespace icz

#pragma once

#include <string>

namespace hypercorr {

// Shortest decimal string that round-trips to exactly the same double
// (std::to_chars). Used for every float in CSV/JSON output so that
// serialize(parse(text)) == text byte-for-byte.
std::string format_double(double v);

// Strict full-string parse of a double; throws ParameterError on trailing
// garbage or empty input.
double parse_double(const std::string& text);

}  // namespace hypercorr

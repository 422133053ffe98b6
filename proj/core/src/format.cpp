#include "hypercorr/format.hpp"

#include <charconv>
#include <system_error>

#include "hypercorr/errors.hpp"

namespace hypercorr {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || text.empty()) {
    throw ParameterError("cannot parse floating-point value from \"" + text + "\"");
  }
  return v;
}

}  // namespace hypercorr

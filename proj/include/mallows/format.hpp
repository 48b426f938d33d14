#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace mallows {

// Locale-independent, 17 significant digits.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Shortest text that reads back to the same double; for messages.
inline std::string format_short(double v) {
  if (!std::isfinite(v)) return format_real(v);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace mallows

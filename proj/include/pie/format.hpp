#pragma once

#include <cstdio>
#include <string>

namespace pie {

/// Locale-independent, run-to-run stable text for a double. Integral values
/// print without a fractional part.
inline std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

}  // namespace pie

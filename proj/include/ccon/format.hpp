#pragma once

#include <cstdio>
#include <string>

namespace ccon {

/// printf-style %.{digits}g, with -0 folded to 0 so outputs diff cleanly.
inline std::string format_significant(double value, int digits) {
  if (value == 0.0) value = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

}  // namespace ccon

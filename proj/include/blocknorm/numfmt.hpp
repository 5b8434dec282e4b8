#pragma once

#include <cstdio>
#include <string>

namespace blocknorm {

// 17 significant digits round-trip an IEEE double exactly, which keeps every
// serialized report byte-deterministic.
inline std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

}  // namespace blocknorm

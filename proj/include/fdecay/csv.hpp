#pragma once

#include <cstdio>
#include <fstream>
#include <string>

namespace fdecay {

/// Shortest representation that round-trips an IEEE double (17
/// significant digits).
inline std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string format_full(long long x) { return std::to_string(x); }
inline std::string format_full(int x) { return std::to_string(x); }

}  // namespace fdecay

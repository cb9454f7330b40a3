#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace ncl {

/// Shortest representation with 17 significant digits: round-trips exactly.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt_bool(bool v) { return v ? "true" : "false"; }

inline std::string join_csv(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out.push_back(',');
    out += fields[k];
  }
  out.push_back('\n');
  return out;
}

}  // namespace ncl

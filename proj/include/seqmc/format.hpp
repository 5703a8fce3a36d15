#pragma once

#include <cstdio>
#include <string>

namespace seqmc {

// Round-trippable decimal form used by every CSV/JSON writer.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace seqmc

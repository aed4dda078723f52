#include "norden/numkit/scalar.hpp"

#include <cstdio>

namespace norden {

std::string format_scalar(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_scalar(const Rational& q) { return to_string(q); }

}  // namespace norden

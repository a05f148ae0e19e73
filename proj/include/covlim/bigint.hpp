#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace covlim {

using Integer = boost::multiprecision::cpp_int;

/// Quotient rounded toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline std::string to_string(const Integer& a) { return a.str(); }

}  // namespace covlim

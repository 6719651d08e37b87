#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace twosegal {

// Exact arithmetic for groupoid cardinalities. Magnitudes stay small
// (sums of 1/|Aut| over a few thousand classes), so long long is ample.
using Rational = boost::rational<long long>;

inline std::string to_string(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

}  // namespace twosegal

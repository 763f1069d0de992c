#ifndef GPW_BIGINT_HPP
#define GPW_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "gpw/errors.hpp"

namespace gpw {

using BigInt = boost::multiprecision::cpp_int;

inline int sgn(const BigInt& x) { return x.sign(); }

inline BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Non-negative residue of x modulo m (m > 0).
inline BigInt floor_mod(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt pow2(unsigned bits) {
  BigInt r = 1;
  r <<= bits;
  return r;
}

// Accepts an optional leading '-' or '+' followed by decimal digits.
inline BigInt parse_bigint(std::string_view s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw ParseError("malformed integer '" + std::string(s) + "'");
  BigInt r = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("malformed integer '" + std::string(s) + "'");
    r *= 10;
    r += s[i] - '0';
  }
  return neg ? BigInt(-r) : r;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace gpw

#endif

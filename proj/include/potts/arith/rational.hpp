#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace potts {

// Arbitrary-precision rational. GMP keeps it canonical: gcd(num, den) = 1, den > 0.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(std::string_view text) {
  Rational r(std::string(text), 10);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace potts

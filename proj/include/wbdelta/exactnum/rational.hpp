#pragma once

/**
 * @file rational.hpp
 * @brief Arbitrary-precision rationals.
 *
 * Thin layer over GMP's mpq_class. Values are always kept canonical:
 * lowest terms, positive denominator, zero stored as 0/1.
 */

#include <gmpxx.h>

#include <cstdint>
#include <cstdio>
#include <regex>
#include <string>
#include <string_view>

#include "wbdelta/error.hpp"

namespace wbdelta {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(Errc::domain, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(^\s*([+-]?\d+)(?:/(\d+))?\s*$)");
  std::cmatch m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern)) {
    throw Error(Errc::parse, "not a rational: '" + std::string(text) + "'");
  }
  std::string num = m[1].str();
  if (!num.empty() && num.front() == '+') num.erase(0, 1);
  Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
  return make_rational(Integer(num), den);
}

inline int sign(const Rational& q) { return sgn(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// 15-significant-digit decimal rendering. Display only.
inline std::string decimal_shadow(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline Integer int_pow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Rational rat_pow(const Rational& base, unsigned exp) {
  Rational r(1);
  for (unsigned k = 0; k < exp; ++k) r *= base;
  return r;
}

}  // namespace wbdelta

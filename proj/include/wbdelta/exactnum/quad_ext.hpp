#pragma once

/**
 * @file quad_ext.hpp
 * @brief Elements r + s*sqrt(d) of a real quadratic field Q(sqrt(d)).
 *
 * The radicand is carried per value. Arithmetic between two values with
 * nonzero radical parts requires equal radicands; a value whose radical part
 * is zero is an ordinary rational and combines with anything. The only
 * operation that accepts two distinct radicands is `quad_compare`.
 *
 * Signs are always decided exactly (conjugate / squaring), never through
 * floating point.
 */

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>

#include "wbdelta/error.hpp"
#include "wbdelta/exactnum/rational.hpp"

namespace wbdelta {

inline bool is_squarefree(std::int64_t d) {
  if (d < 2) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

class QuadExt {
 public:
  static constexpr std::int64_t kDefaultRadicand = 3;

  QuadExt() : QuadExt(Rational(0)) {}

  // NOLINTNEXTLINE(google-explicit-constructor): rationals embed naturally.
  QuadExt(const Rational& rational_part, const Rational& radical_part = Rational(0),
          std::int64_t radicand = kDefaultRadicand)
      : r_(rational_part), s_(radical_part), d_(radicand) {
    if (!is_squarefree(d_)) {
      throw Error(Errc::domain, "radicand must be a squarefree integer >= 2, got " +
                                    std::to_string(d_));
    }
  }

  /// sqrt(d) itself.
  static QuadExt sqrt_of(std::int64_t radicand) { return QuadExt(0, 1, radicand); }

  const Rational& rational_part() const { return r_; }
  const Rational& radical_part() const { return s_; }
  std::int64_t radicand() const { return d_; }
  bool is_rational() const { return s_ == 0; }

  QuadExt conj() const { return QuadExt(r_, -s_, d_); }

  /// r^2 - d*s^2, the field norm (a rational).
  Rational norm() const { return r_ * r_ - Rational(static_cast<long>(d_)) * s_ * s_; }

  /// -1, 0 or +1, decided exactly.
  int sign() const {
    const int sr = sgn(r_);
    const int ss = sgn(s_);
    if (ss == 0) return sr;
    if (sr == 0) return ss;
    if (sr == ss) return sr;
    // Opposite signs: the larger of r^2 and d*s^2 wins.
    const int c = cmp(r_ * r_, Rational(static_cast<long>(d_)) * s_ * s_);
    if (c > 0) return sr;
    if (c < 0) return ss;
    return 0;
  }

  QuadExt inverse() const {
    if (sign() == 0) throw Error(Errc::domain, "inverse of zero");
    const Rational n = norm();
    return QuadExt(r_ / n, -s_ / n, d_);
  }

  QuadExt operator-() const { return QuadExt(-r_, -s_, d_); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.r_ + y.r_, x.s_ + y.s_, common_radicand(x, y));
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.r_ - y.r_, x.s_ - y.s_, common_radicand(x, y));
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    const std::int64_t d = common_radicand(x, y);
    return QuadExt(x.r_ * y.r_ + Rational(static_cast<long>(d)) * x.s_ * y.s_,
                   x.r_ * y.s_ + x.s_ * y.r_, d);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    common_radicand(x, y);
    return x * y.inverse();
  }

  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
  QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y);
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y);

  /// 256-bit evaluation for display purposes.
  double to_double() const {
    mpf_class root(static_cast<double>(d_), 256);
    mpf_class out(0, 256);
    mpf_sqrt(root.get_mpf_t(), root.get_mpf_t());
    out = mpf_class(r_, 256) + mpf_class(s_, 256) * root;
    return out.get_d();
  }

 private:
  static std::int64_t common_radicand(const QuadExt& x, const QuadExt& y) {
    if (x.s_ == 0) return y.d_;
    if (y.s_ == 0) return x.d_;
    if (x.d_ != y.d_) {
      throw Error(Errc::domain, "mixed radicands sqrt(" + std::to_string(x.d_) + ") and sqrt(" +
                                    std::to_string(y.d_) + ") are only comparable");
    }
    return x.d_;
  }

  Rational r_;
  Rational s_;
  std::int64_t d_;
};

namespace detail {

/// Exact sign of  a + s1*sqrt(d1) + s2*sqrt(d2)  with d1 != d2.
inline int sign_of_two_radicals(const Rational& a, const Rational& s1, std::int64_t d1,
                                const Rational& s2, std::int64_t d2) {
  const QuadExt u(a, s1, d1);
  const int su = u.sign();
  const int st = sgn(s2);
  if (st == 0) return su;
  if (su == 0) return st;
  if (su == st) return su;
  // u and s2*sqrt(d2) have opposite signs: compare u^2 with s2^2*d2.
  const QuadExt w = u * u - QuadExt(s2 * s2 * Rational(static_cast<long>(d2)), 0, d1);
  const int sw = w.sign();
  if (sw > 0) return su;
  if (sw < 0) return st;
  return 0;
}

}  // namespace detail

/// Exact ordering of two real quadratic irrationals. Distinct radicands are
/// handled by the squaring chain in detail::sign_of_two_radicals.
inline std::strong_ordering quad_compare(const QuadExt& x, const QuadExt& y) {
  int s = 0;
  if (x.is_rational() || y.is_rational() || x.radicand() == y.radicand()) {
    const std::int64_t d = x.is_rational() ? y.radicand() : x.radicand();
    s = QuadExt(x.rational_part() - y.rational_part(), x.radical_part() - y.radical_part(), d)
            .sign();
  } else {
    s = detail::sign_of_two_radicals(x.rational_part() - y.rational_part(), x.radical_part(),
                                     x.radicand(), -y.radical_part(), y.radicand());
  }
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

inline bool operator==(const QuadExt& x, const QuadExt& y) {
  return quad_compare(x, y) == std::strong_ordering::equal;
}

inline std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
  return quad_compare(x, y);
}

/// Canonical serialization "p/q+r/s*sqrt(d)" (radical term always present).
inline std::string to_string(const QuadExt& x) {
  std::string out = to_string(x.rational_part());
  out += sgn(x.radical_part()) < 0 ? "-" : "+";
  out += to_string(Rational(abs(x.radical_part())));
  out += "*sqrt(" + std::to_string(x.radicand()) + ")";
  return out;
}

/// Common-denominator form, e.g. "(66+48*sqrt(3))/71".
inline std::string to_display_string(const QuadExt& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  Integer den;
  mpz_lcm(den.get_mpz_t(), x.rational_part().get_den_mpz_t(), x.radical_part().get_den_mpz_t());
  const Integer p = x.rational_part().get_num() * (den / x.rational_part().get_den());
  const Integer q = x.radical_part().get_num() * (den / x.radical_part().get_den());
  std::string body;
  if (p != 0) body = p.get_str();
  if (p != 0) body += q < 0 ? "-" : "+";
  else if (q < 0) body += "-";
  const Integer aq = abs(q);
  if (aq != 1) body += aq.get_str() + "*";
  body += "sqrt(" + std::to_string(x.radicand()) + ")";
  if (den == 1) return body;
  return (p != 0 ? "(" + body + ")" : body) + "/" + den.get_str();
}

/// Factored form c*(A+B*sqrt(d)) with coprime integers A, B; e.g. "(6/71)*(11+8*sqrt(3))".
inline std::string to_factored_string(const QuadExt& x) {
  if (x.is_rational() || x.rational_part() == 0) return to_display_string(x);
  Integer den;
  mpz_lcm(den.get_mpz_t(), x.rational_part().get_den_mpz_t(), x.radical_part().get_den_mpz_t());
  Integer p = x.rational_part().get_num() * (den / x.rational_part().get_den());
  Integer q = x.radical_part().get_num() * (den / x.radical_part().get_den());
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  p /= g;
  q /= g;
  const Rational content = make_rational(g, den);
  std::string inner = p.get_str() + (q < 0 ? "-" : "+");
  if (abs(q) != 1) inner += Integer(abs(q)).get_str() + "*";
  inner += "sqrt(" + std::to_string(x.radicand()) + ")";
  if (content == 1) return inner;
  return "(" + to_string(content) + ")*(" + inner + ")";
}

/// Parses the canonical form; a bare rational is accepted as well.
inline QuadExt parse_quad(std::string_view text,
                          std::int64_t default_radicand = QuadExt::kDefaultRadicand) {
  static const std::regex pattern(
      R"(^\s*([+-]?\d+(?:/\d+)?)([+-])(\d+(?:/\d+)?)\*sqrt\((\d+)\)\s*$)");
  std::cmatch m;
  if (std::regex_match(text.begin(), text.end(), m, pattern)) {
    Rational s = parse_rational(m[3].str());
    if (m[2].str() == "-") s = -s;
    return QuadExt(parse_rational(m[1].str()), s, std::stoll(m[4].str()));
  }
  return QuadExt(parse_rational(text), 0, default_radicand);
}

inline std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << to_string(x); }

}  // namespace wbdelta

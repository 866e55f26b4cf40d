#pragma once

/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials with rational coefficients.
 *
 * Coefficients are stored by degree (index k holds the t^k coefficient) and
 * trailing zeros are trimmed, so the zero polynomial has no coefficients.
 * Degrees in this project stay small (<= 4), so dense storage is the natural
 * choice.
 */

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "wbdelta/error.hpp"
#include "wbdelta/exactnum/quad_ext.hpp"
#include "wbdelta/exactnum/rational.hpp"

namespace wbdelta {

class Polynomial {
 public:
  Polynomial() = default;
  // NOLINTNEXTLINE(google-explicit-constructor): constants are polynomials.
  Polynomial(const Rational& constant) : coeffs_{constant} { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// The monomial t.
  static Polynomial identity() { return Polynomial{Rational(0), Rational(1)}; }

  /// c0 + c1*t.
  static Polynomial linear(const Rational& c0, const Rational& c1) { return Polynomial{c0, c1}; }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  template <class Scalar>
  Scalar evaluate(const Scalar& x) const {
    Scalar acc = Scalar(Rational(0));
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Scalar(*it);
    return acc;
  }

  Rational operator()(const Rational& x) const { return evaluate<Rational>(x); }

  Polynomial derivative() const {
    std::vector<Rational> out;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out.push_back(coeffs_[k] * static_cast<long>(k));
    return Polynomial(std::move(out));
  }

  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const {
    std::vector<Rational> out(coeffs_.size() + 1, Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k + 1] = coeffs_[k] / static_cast<long>(k + 1);
    return Polynomial(std::move(out));
  }

  Rational integrate(const Rational& lo, const Rational& hi) const {
    const Polynomial anti = antiderivative();
    return anti(hi) - anti(lo);
  }

  Polynomial operator-() const {
    std::vector<Rational> out = coeffs_;
    for (auto& c : out) c = -c;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<Rational> out(std::max(p.coeffs_.size(), q.coeffs_.size()), Rational(0));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.coeff(k) + q.coeff(k);
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Rational> out(p.coeffs_.size() + q.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return Polynomial(std::move(out));
  }
  Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
  Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }
  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.coeffs_ == q.coeffs_; }

  /// Substitution p(q(t)).
  Polynomial compose(const Polynomial& inner) const {
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + Polynomial(*it);
    return acc;
  }

  /// Human-readable form in the given variable, e.g. "1/2-3*t+t^2".
  std::string to_string(const std::string& var = "t") const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Rational& c = coeffs_[k];
      if (c == 0) continue;
      const bool neg = sgn(c) < 0;
      const Rational mag = abs(c);
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? "-" : "+";
      }
      if (k == 0) {
        out += wbdelta::to_string(mag);
        continue;
      }
      if (mag != 1) out += wbdelta::to_string(mag) + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// Writes n = k^2 * m with m squarefree (m >= 1). Trial division; the inputs
/// here are small discriminants.
inline std::pair<Integer, Integer> squarefree_split(const Integer& n) {
  if (n <= 0) throw Error(Errc::domain, "squarefree_split needs a positive integer");
  Integer rest = n;
  Integer square_root_part = 1;
  Integer free_part = 1;
  for (Integer p = 2; p * p <= rest; ++p) {
    if (p > 10'000'000) throw Error(Errc::not_applicable, "discriminant too large to factor");
    while (rest % (p * p) == 0) {
      rest /= p * p;
      square_root_part *= p;
    }
    if (rest % p == 0) {
      rest /= p;
      free_part *= p;
    }
  }
  free_part *= rest;
  return {square_root_part, free_part};
}

/// Real roots of a polynomial of degree <= 2, ascending. Irrational roots
/// come back as elements of Q(sqrt(m)) with m the squarefree part of the
/// discriminant.
inline std::vector<QuadExt> real_roots_up_to_quadratic(const Polynomial& p) {
  if (p.degree() > 2) throw Error(Errc::not_applicable, "degree > 2");
  if (p.degree() < 1) return {};
  if (p.degree() == 1) return {QuadExt(-p.coeff(0) / p.coeff(1))};
  const Rational a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
  const Rational disc = b * b - 4 * a * c;
  if (sgn(disc) < 0) return {};
  const Rational center = -b / (2 * a);
  if (disc == 0) return {QuadExt(center)};
  // sqrt(disc) = sqrt(num*den)/den = k*sqrt(m)/den.
  const auto [k, m] = squarefree_split(disc.get_num() * disc.get_den());
  const Rational half_width = make_rational(k, disc.get_den()) / (2 * abs(a));
  if (m == 1) return {QuadExt(center - half_width), QuadExt(center + half_width)};
  const std::int64_t radicand = m.get_si();
  return {QuadExt(center, -half_width, radicand), QuadExt(center, half_width, radicand)};
}

}  // namespace wbdelta

#pragma once

// Polynomials in the two weights (a, b) and ratios of them. Used for the
// closed-form S-values and ratio entries, whose homogeneity degree decides
// whether a limit along (a_m, b_m) -> infinity exists.

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "wbdelta/error.hpp"
#include "wbdelta/exactnum/polynomial.hpp"
#include "wbdelta/exactnum/quad_ext.hpp"
#include "wbdelta/exactnum/rational.hpp"

namespace wbdelta {

class BivariatePolynomial {
 public:
  using Exponents = std::pair<unsigned, unsigned>;  // (deg in a, deg in b)

  BivariatePolynomial() = default;
  // NOLINTNEXTLINE(google-explicit-constructor)
  BivariatePolynomial(const Rational& constant) { add_term(0, 0, constant); }

  static BivariatePolynomial a() { return monomial(1, 0); }
  static BivariatePolynomial b() { return monomial(0, 1); }
  static BivariatePolynomial monomial(unsigned i, unsigned j, const Rational& c = Rational(1)) {
    BivariatePolynomial p;
    p.add_term(i, j, c);
    return p;
  }

  void add_term(unsigned i, unsigned j, const Rational& c) {
    Rational& slot = terms_[{i, j}];
    slot += c;
    if (slot == 0) terms_.erase({i, j});
  }

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree if every monomial has the same one; nullopt otherwise (or for 0).
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const int d = static_cast<int>(terms_.begin()->first.first + terms_.begin()->first.second);
    for (const auto& [e, c] : terms_) {
      if (static_cast<int>(e.first + e.second) != d) return std::nullopt;
    }
    return d;
  }

  template <class Scalar>
  Scalar evaluate(const Scalar& a, const Scalar& b) const {
    Scalar acc = Scalar(Rational(0));
    for (const auto& [e, c] : terms_) {
      Scalar term = Scalar(c);
      for (unsigned k = 0; k < e.first; ++k) term = term * a;
      for (unsigned k = 0; k < e.second; ++k) term = term * b;
      acc = acc + term;
    }
    return acc;
  }

  /// p(mu, 1).
  Polynomial dehomogenize() const {
    Polynomial out;
    for (const auto& [e, c] : terms_) {
      Polynomial mono(c);
      for (unsigned k = 0; k < e.first; ++k) mono *= Polynomial::identity();
      out += mono;
    }
    return out;
  }

  friend BivariatePolynomial operator+(BivariatePolynomial p, const BivariatePolynomial& q) {
    for (const auto& [e, c] : q.terms_) p.add_term(e.first, e.second, c);
    return p;
  }
  friend BivariatePolynomial operator-(BivariatePolynomial p, const BivariatePolynomial& q) {
    for (const auto& [e, c] : q.terms_) p.add_term(e.first, e.second, -c);
    return p;
  }
  friend BivariatePolynomial operator*(const BivariatePolynomial& p, const BivariatePolynomial& q) {
    BivariatePolynomial out;
    for (const auto& [e1, c1] : p.terms_)
      for (const auto& [e2, c2] : q.terms_) out.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    return out;
  }
  friend bool operator==(const BivariatePolynomial& p, const BivariatePolynomial& q) {
    return p.terms_ == q.terms_;
  }

  BivariatePolynomial pow(unsigned n) const {
    BivariatePolynomial out(Rational(1));
    for (unsigned k = 0; k < n; ++k) out = out * *this;
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Highest power of a first reads most naturally: 15*a^2+34*a*b+8*b^2.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool neg = sgn(c) < 0;
      if (!out.empty() || neg) out += neg ? "-" : "+";
      const Rational mag = abs(c);
      std::string mono;
      auto power = [](const char* v, unsigned n) {
        return n == 0 ? std::string() : n == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(n);
      };
      const std::string pa = power("a", e.first), pb = power("b", e.second);
      mono = pa;
      if (!pb.empty()) mono += (mono.empty() ? "" : "*") + pb;
      if (mono.empty()) out += wbdelta::to_string(mag);
      else if (mag == 1) out += mono;
      else out += wbdelta::to_string(mag) + "*" + mono;
    }
    return out;
  }

 private:
  std::map<Exponents, Rational> terms_;
};

/// numerator / denominator, not reduced.
class HomogeneousRatio {
 public:
  HomogeneousRatio(BivariatePolynomial num, BivariatePolynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(Errc::domain, "zero denominator");
  }

  const BivariatePolynomial& numerator() const { return num_; }
  const BivariatePolynomial& denominator() const { return den_; }

  /// deg(num) - deg(den) when both are homogeneous; throws not-applicable otherwise.
  int homogeneity_degree() const {
    const auto dn = num_.homogeneous_degree();
    const auto dd = den_.homogeneous_degree();
    if (num_.is_zero() && dd) return 0;
    if (!dn || !dd) throw Error(Errc::not_applicable, "entry is not a ratio of homogeneous polynomials");
    return *dn - *dd;
  }

  template <class Scalar>
  Scalar evaluate(const Scalar& a, const Scalar& b) const {
    return num_.evaluate(a, b) / den_.evaluate(a, b);
  }

  /// Formal equality num1*den2 == num2*den1.
  bool same_function_as(const HomogeneousRatio& other) const {
    return num_ * other.den_ == other.num_ * den_;
  }

  friend HomogeneousRatio operator*(const HomogeneousRatio& x, const HomogeneousRatio& y) {
    return {x.num_ * y.num_, x.den_ * y.den_};
  }
  friend HomogeneousRatio operator/(const HomogeneousRatio& x, const HomogeneousRatio& y) {
    if (y.num_.is_zero()) throw Error(Errc::domain, "division by the zero ratio");
    return {x.num_ * y.den_, x.den_ * y.num_};
  }

  std::string to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

 private:
  BivariatePolynomial num_;
  BivariatePolynomial den_;
};

}  // namespace wbdelta

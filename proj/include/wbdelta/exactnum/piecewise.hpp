#pragma once

/**
 * @file piecewise.hpp
 * @brief Piecewise polynomials over rational breakpoints, exactly integrable.
 *
 * Piece k lives on [breakpoints[k], breakpoints[k+1]]. Interior breakpoints
 * belong to both neighbours; `evaluate` uses the right piece there (the left
 * one at the final breakpoint), `evaluate_left` / `evaluate_right` give the
 * one-sided values.
 */

#include <algorithm>
#include <functional>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "wbdelta/error.hpp"
#include "wbdelta/exactnum/polynomial.hpp"
#include "wbdelta/exactnum/rational.hpp"

namespace wbdelta {

struct ContinuityRecord {
  Rational at;
  Rational left;
  Rational right;
  bool equal = false;
};

class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces)
      : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (breaks_.size() < 2) throw Error(Errc::domain, "need at least two breakpoints");
    if (pieces_.size() + 1 != breaks_.size()) {
      throw Error(Errc::domain, "piece count must be breakpoint count minus one");
    }
    for (std::size_t k = 1; k < breaks_.size(); ++k) {
      if (!(breaks_[k - 1] < breaks_[k])) throw Error(Errc::domain, "breakpoints must increase strictly");
    }
  }

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }
  const Rational& lower() const { return breaks_.front(); }
  const Rational& upper() const { return breaks_.back(); }

  bool contains(const Rational& t) const { return lower() <= t && t <= upper(); }

  /// Index of the piece whose half-open interval [b_k, b_{k+1}) holds t.
  std::size_t piece_index(const Rational& t) const {
    require_in_domain(t);
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - breaks_.begin());
    if (k == 0) return 0;
    return std::min(k - 1, pieces_.size() - 1);
  }

  Rational evaluate(const Rational& t) const { return pieces_[piece_index(t)](t); }
  Rational operator()(const Rational& t) const { return evaluate(t); }

  Rational evaluate_left(const Rational& t) const {
    require_in_domain(t);
    if (t == lower()) return pieces_.front()(t);
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
    return pieces_[static_cast<std::size_t>(it - breaks_.begin()) - 1](t);
  }

  Rational evaluate_right(const Rational& t) const {
    require_in_domain(t);
    if (t == upper()) return pieces_.back()(t);
    return evaluate(t);
  }

  Rational integrate(const Rational& lo, const Rational& hi) const {
    if (lo > hi) throw Error(Errc::domain, "integration bounds reversed");
    require_in_domain(lo);
    require_in_domain(hi);
    Rational total = 0;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      const Rational a = std::max(lo, breaks_[k]);
      const Rational b = std::min(hi, breaks_[k + 1]);
      if (a < b) total += pieces_[k].integrate(a, b);
    }
    return total;
  }

  Rational integrate() const { return integrate(lower(), upper()); }

  std::vector<ContinuityRecord> check_continuity() const {
    std::vector<ContinuityRecord> out;
    for (std::size_t k = 1; k + 1 < breaks_.size(); ++k) {
      ContinuityRecord rec{breaks_[k], pieces_[k - 1](breaks_[k]), pieces_[k](breaks_[k])};
      rec.equal = rec.left == rec.right;
      out.push_back(std::move(rec));
    }
    return out;
  }

  bool is_continuous() const {
    const auto recs = check_continuity();
    return std::all_of(recs.begin(), recs.end(), [](const auto& r) { return r.equal; });
  }

  PiecewisePolynomial derivative() const { return map([](const Polynomial& p) { return p.derivative(); }); }

  PiecewisePolynomial map(const std::function<Polynomial(const Polynomial&)>& fn) const {
    std::vector<Polynomial> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(fn(p));
    return {breaks_, std::move(out)};
  }

  friend PiecewisePolynomial operator+(const PiecewisePolynomial& f, const PiecewisePolynomial& g) {
    return combine(f, g, [](const Polynomial& p, const Polynomial& q) { return p + q; });
  }
  friend PiecewisePolynomial operator-(const PiecewisePolynomial& f, const PiecewisePolynomial& g) {
    return combine(f, g, [](const Polynomial& p, const Polynomial& q) { return p - q; });
  }
  friend PiecewisePolynomial operator*(const PiecewisePolynomial& f, const PiecewisePolynomial& g) {
    return combine(f, g, [](const Polynomial& p, const Polynomial& q) { return p * q; });
  }
  friend PiecewisePolynomial operator*(const Rational& c, const PiecewisePolynomial& f) {
    return f.map([&c](const Polynomial& p) { return Polynomial(c) * p; });
  }

  /// Pointwise combination on the union of both breakpoint sets; domains must agree.
  template <class Op>
  static PiecewisePolynomial combine(const PiecewisePolynomial& f, const PiecewisePolynomial& g, Op op) {
    if (f.lower() != g.lower() || f.upper() != g.upper()) {
      throw Error(Errc::domain, "piecewise operands have different domains");
    }
    std::vector<Rational> merged;
    std::set_union(f.breaks_.begin(), f.breaks_.end(), g.breaks_.begin(), g.breaks_.end(),
                   std::back_inserter(merged));
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
      const Rational mid = (merged[k] + merged[k + 1]) / 2;
      out.push_back(op(f.pieces_[f.piece_index(mid)], g.pieces_[g.piece_index(mid)]));
    }
    return {std::move(merged), std::move(out)};
  }

 private:
  void require_in_domain(const Rational& t) const {
    if (!contains(t)) {
      throw Error(Errc::domain, "point " + to_string(t) + " outside [" + to_string(lower()) + ", " +
                                    to_string(upper()) + "]");
    }
  }

  std::vector<Rational> breaks_;
  std::vector<Polynomial> pieces_;
};

/// Free-function spelling used by callers that think of integration as an operation.
inline Rational piecewise_integrate(const PiecewisePolynomial& f, const Rational& lo, const Rational& hi) {
  return f.integrate(lo, hi);
}

inline std::vector<ContinuityRecord> check_continuity(const PiecewisePolynomial& f) {
  return f.check_continuity();
}

}  // namespace wbdelta

#pragma once

/**
 * @file svalues.hpp
 * @brief Volumes of -K - tE, the invariant S(-K_X; E), and the ratio A/S.
 *
 * With mu = a/b the ratio A_X(E)/S(-K_X;E) depends on mu alone:
 *
 *     f(mu) = 12(3mu+2)(1+mu) / (15mu^2+34mu+8).
 *
 * minimize_ratio certifies its minimum on an interval with quadratic
 * irrational endpoints by exact sign analysis of f'.
 */

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wbdelta/error.hpp"
#include "wbdelta/exactnum/bivariate.hpp"
#include "wbdelta/exactnum/piecewise.hpp"
#include "wbdelta/exactnum/polynomial.hpp"
#include "wbdelta/exactnum/quad_ext.hpp"
#include "wbdelta/exactnum/rational.hpp"
#include "wbdelta/lattice.hpp"
#include "wbdelta/zariski.hpp"

namespace wbdelta {

struct VolumeProfile {
  PiecewisePolynomial vol;             ///< P(t)^2
  PiecewisePolynomial vol_restricted;  ///< P(t).E
  Rational tau;
};

/// The three displayed restricted volumes t/(ab), (a+t)/(a(a+b)), 6(a+2b-2t)/(4b^2-3a^2).
inline PiecewisePolynomial restricted_volume_closed_form(std::int64_t a, std::int64_t b) {
  validate_weights(a, b);
  const Rational ra(static_cast<long>(a)), rb(static_cast<long>(b));
  const Rational den = 4 * rb * rb - 3 * ra * ra;
  const Rational t2 = ra * (3 * ra + 4 * rb) / (3 * ra + 2 * rb);
  return PiecewisePolynomial({Rational(0), rb, t2, pseudoeffective_threshold(a, b)},
                             {Polynomial::linear(0, 1 / (ra * rb)),
                              Polynomial::linear(1 / (ra + rb), 1 / (ra * (ra + rb))),
                              Polynomial::linear(6 * (ra + 2 * rb) / den, -12 / den)});
}

inline VolumeProfile volume_profile(std::int64_t a, std::int64_t b) {
  const SurfaceConfig config = build_wbu_config(a, b);
  const ZariskiDecomposition z = decompose_family(config, a, b);
  std::vector<Polynomial> restricted;
  for (const auto& r : z.regions) restricted.push_back(intersect_curve(config, r.positive, curve::E));
  VolumeProfile out{z.volume(config), PiecewisePolynomial(z.breakpoints(), std::move(restricted)), z.tau};

  const auto fail = [&](const std::string& what) {
    throw Error(Errc::invariant_failure,
                "(" + std::to_string(a) + "," + std::to_string(b) + ") volume profile: " + what);
  };
  const PiecewisePolynomial closed = restricted_volume_closed_form(a, b);
  if (closed.breakpoints() != out.vol_restricted.breakpoints() || closed.pieces() != out.vol_restricted.pieces()) {
    fail("restricted volume differs from the closed form");
  }
  if ((make_rational(-1, 2) * out.vol.derivative()).pieces() != out.vol_restricted.pieces()) {
    fail("restricted volume is not -1/2 d(vol)/dt");
  }
  if (!out.vol.is_continuous()) fail("vol is discontinuous");
  if (out.vol(0) != kAnticanonicalDegree || out.vol(out.tau) != 0) fail("vol endpoint values");
  // vol(t) = 2 - 2 * integral_0^t vol_restricted, checked at every breakpoint.
  for (const auto& t : out.vol.breakpoints()) {
    if (out.vol(t) != kAnticanonicalDegree - 2 * out.vol_restricted.integrate(0, t)) fail("vol is not 2 - 2*int");
  }
  return out;
}

struct SValue {
  Rational via_restricted;  ///< (2 / (-K)^2) * int t * vol_restricted
  Rational via_volume;      ///< (1 / (-K)^2) * int vol
  Rational closed_form;
};

/// (15a^2+34ab+8b^2) / (12(3a+2b)) as a ratio in (a, b).
inline HomogeneousRatio s_value_closed_form() {
  const auto a = BivariatePolynomial::a();
  const auto b = BivariatePolynomial::b();
  const auto num = Rational(15) * a * a + Rational(34) * a * b + Rational(8) * b * b;
  const auto den = Rational(12) * (Rational(3) * a + Rational(2) * b);
  return {num, den};
}

/// a + b.
inline HomogeneousRatio log_discrepancy_ratio() {
  return {BivariatePolynomial::a() + BivariatePolynomial::b(), BivariatePolynomial(Rational(1))};
}

inline SValue s_value_E_detailed(std::int64_t a, std::int64_t b) {
  const VolumeProfile v = volume_profile(a, b);
  const PiecewisePolynomial t_times = v.vol_restricted.map([](const Polynomial& p) { return Polynomial::identity() * p; });
  SValue s;
  s.via_restricted = 2 * t_times.integrate() / kAnticanonicalDegree;
  s.via_volume = v.vol.integrate() / kAnticanonicalDegree;
  s.closed_form = s_value_closed_form().evaluate(Rational(static_cast<long>(a)), Rational(static_cast<long>(b)));
  return s;
}

/// S(-K_X; E); both integral forms must agree.
inline Rational s_value_E(std::int64_t a, std::int64_t b) {
  const SValue s = s_value_E_detailed(a, b);
  if (s.via_restricted != s.via_volume) {
    throw Error(Errc::invariant_failure, "integral forms of S disagree: " + to_string(s.via_restricted) + " vs " +
                                             to_string(s.via_volume));
  }
  return s.via_volume;
}

class RatioFunction {
 public:
  RatioFunction(Polynomial numerator, Polynomial denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {}

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  template <class Scalar>
  Scalar operator()(const Scalar& mu) const {
    const Scalar d = den_.evaluate(mu);
    if (d == Scalar(Rational(0))) throw Error(Errc::domain, "ratio denominator vanishes");
    return num_.evaluate(mu) / d;
  }

  /// N'D - ND', whose sign is the sign of f'.
  Polynomial derivative_numerator() const { return num_.derivative() * den_ - num_ * den_.derivative(); }

 private:
  Polynomial num_;
  Polynomial den_;
};

/// A/S dehomogenized at b = 1.
inline RatioFunction ratio_function() {
  const HomogeneousRatio r = log_discrepancy_ratio() / s_value_closed_form();
  return {r.numerator().dehomogenize(), r.denominator().dehomogenize()};
}

template <class Scalar>
Scalar ratio_f(const Scalar& mu) {
  if (!(mu > Scalar(Rational(0)))) throw Error(Errc::domain, "ratio_f needs mu > 0");
  return ratio_function()(mu);
}

/// p / content(p) with a positive leading coefficient; returns (primitive, scale).
inline std::pair<Polynomial, Rational> primitive_part(const Polynomial& p) {
  if (p.is_zero()) return {p, Rational(1)};
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& c : p.coefficients()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational scale = make_rational(num_gcd, den_lcm);
  if (sgn(p.coefficients().back()) < 0) scale = -scale;
  return {Polynomial(Rational(1 / scale)) * p, scale};
}

struct RatioMinimum {
  QuadExt argmin;
  QuadExt min;
  Polynomial derivative_numerator;  ///< primitive, positive leading coefficient
  Rational derivative_scale;        ///< N'D - ND' = scale * derivative_numerator
  std::vector<QuadExt> critical_points;
  int sign_at_lo = 0;
  int sign_at_hi = 0;
  std::string certificate;
};

namespace sdetail {

inline int sign_at(const Polynomial& p, const QuadExt& x) { return p.evaluate(x).sign(); }

inline std::string sign_word(int s) { return s < 0 ? "< 0" : s > 0 ? "> 0" : "= 0"; }

}  // namespace sdetail

/// Exact minimum of f on [lo, hi] (0 < lo < hi).
inline RatioMinimum minimize_ratio(const QuadExt& lo, const QuadExt& hi) {
  if (!(lo > QuadExt(0)) || !(lo < hi)) throw Error(Errc::domain, "expected 0 < lo < hi");
  const RatioFunction f = ratio_function();
  RatioMinimum out;
  std::tie(out.derivative_numerator, out.derivative_scale) = primitive_part(f.derivative_numerator());
  if (out.derivative_scale < 0) throw Error(Errc::invariant_failure, "derivative scale must be positive");
  const Polynomial& g = out.derivative_numerator;
  out.critical_points = real_roots_up_to_quadratic(g);
  out.sign_at_lo = sdetail::sign_at(g, lo);
  out.sign_at_hi = sdetail::sign_at(g, hi);

  std::vector<QuadExt> inside;
  std::vector<std::string> notes;
  for (const auto& r : out.critical_points) {
    if (!(r > QuadExt(0))) continue;
    if (r > lo && r < hi) {
      inside.push_back(r);
      notes.push_back("critical point " + to_display_string(r) + " lies inside");
    } else if (r >= hi) {
      notes.push_back("interior critical point " + to_display_string(r) + " lies right of " + to_display_string(hi));
    } else {
      notes.push_back("interior critical point " + to_display_string(r) + " lies left of " + to_display_string(lo));
    }
  }

  std::vector<QuadExt> candidates{lo, hi};
  candidates.insert(candidates.end(), inside.begin(), inside.end());
  out.argmin = lo;
  out.min = f(lo);
  for (const auto& c : candidates) {
    const QuadExt v = f(c);
    if (v < out.min) {
      out.min = v;
      out.argmin = c;
    }
  }

  std::string head;
  if (inside.empty()) {
    // No sign change inside: the sign at a non-root endpoint holds on the open interval.
    const int s = out.sign_at_lo != 0 ? out.sign_at_lo : out.sign_at_hi;
    head = "f' " + sdetail::sign_word(s) + " on the interval";
  } else {
    head = "f' changes sign inside the interval; minimum taken over endpoints and critical points";
  }
  out.certificate = head;
  for (const auto& n : notes) out.certificate += "; " + n;
  return out;
}

struct RatioGridRow {
  Rational mu;
  Rational f;
};

/// n evenly spaced rational points on [lo, hi].
inline std::vector<RatioGridRow> ratio_grid(const Rational& lo, const Rational& hi, std::size_t n) {
  if (n < 2 || !(lo > 0) || !(lo < hi)) throw Error(Errc::domain, "grid needs 0 < lo < hi and n >= 2");
  std::vector<RatioGridRow> rows;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational mu = lo + (hi - lo) * Rational(static_cast<long>(k)) / Rational(static_cast<long>(n - 1));
    rows.push_back({mu, ratio_f(mu)});
  }
  return rows;
}

/// CSV with exact values; the decimal column is a non-authoritative shadow.
inline std::string ratio_grid_csv(const std::vector<RatioGridRow>& rows) {
  std::ostringstream os;
  os << "mu,f,f_decimal_nonauthoritative\n";
  for (const auto& r : rows) os << to_string(r.mu) << ',' << to_string(r.f) << ',' << decimal_shadow(to_double(r.f)) << '\n';
  return os.str();
}

}  // namespace wbdelta

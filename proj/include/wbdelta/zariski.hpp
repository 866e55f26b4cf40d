#pragma once

/**
 * @file zariski.hpp
 * @brief Zariski decomposition of pi^*(-K_X) - tE on X_{a,b}.
 *
 * Two independent routes:
 *  - a generic one (decompose_at / decompose_family) that only looks at the
 *    intersection matrix of the config and grows the support of N until P is
 *    nef, and
 *  - the three-region closed form (closed_form_family).
 * cross_validate compares them exactly.
 */

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wbdelta/error.hpp"
#include "wbdelta/exactnum/linalg.hpp"
#include "wbdelta/exactnum/piecewise.hpp"
#include "wbdelta/exactnum/polynomial.hpp"
#include "wbdelta/exactnum/rational.hpp"
#include "wbdelta/lattice.hpp"

namespace wbdelta {

/// (a + 2b) / 2: the E-coefficient of pi^*(-K_X) - tE vanishes here.
inline Rational pseudoeffective_threshold(std::int64_t a, std::int64_t b) {
  return make_rational(a + 2 * b, 2);
}

struct PointDecomposition {
  Rational t;
  DivisorExpr positive;
  DivisorExpr negative;
  std::vector<std::string> support;
  Rational positive_square;
};

struct ZariskiRegion {
  Rational lo;
  Rational hi;
  std::vector<std::string> support;
  DivisorFamily negative;
  DivisorFamily positive;
};

struct ZariskiDecomposition {
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::vector<ZariskiRegion> regions;
  Rational tau;
  std::string tau_reason;  ///< "positive-part-vanishes" or "exceptional-coefficient-zero"

  std::vector<Rational> breakpoints() const {
    std::vector<Rational> out;
    for (const auto& r : regions) out.push_back(r.lo);
    if (!regions.empty()) out.push_back(regions.back().hi);
    return out;
  }

  /// Region holding t; at a joint the region to the right (the last one at tau).
  const ZariskiRegion& region_at(const Rational& t) const {
    for (const auto& r : regions)
      if (r.lo <= t && t < r.hi) return r;
    if (!regions.empty() && t == regions.back().hi) return regions.back();
    throw Error(Errc::out_of_range, "t = " + to_string(t) + " outside the decomposition");
  }

  DivisorExpr negative_at(const Rational& t) const { return evaluate_family(region_at(t).negative, t); }

  /// vol(-K - tE) = P(t)^2 on [0, tau].
  PiecewisePolynomial volume(const SurfaceConfig& config) const {
    std::vector<Polynomial> pieces;
    for (const auto& r : regions) pieces.push_back(self_intersection(config, r.positive));
    return PiecewisePolynomial(breakpoints(), std::move(pieces));
  }
};

namespace zdetail {

inline RationalMatrix support_gram(const SurfaceConfig& config, const std::vector<std::string>& support) {
  RationalMatrix g(support.size(), std::vector<Rational>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i)
    for (std::size_t j = 0; j < support.size(); ++j) g[i][j] = config.intersection(support[i], support[j]);
  return g;
}

inline void require_negative_definite(const SurfaceConfig& config, const std::vector<std::string>& support) {
  if (support.empty()) return;
  if (!is_negative_definite(support_gram(config, support))) {
    throw Error(Errc::degenerate_configuration, "support intersection matrix is not negative definite");
  }
}

/// N with N.C = D.C for every C in the support, coefficients polynomial in t.
inline DivisorFamily solve_negative(const SurfaceConfig& config, const DivisorFamily& family,
                                    const std::vector<std::string>& support) {
  DivisorFamily n;
  if (support.empty()) return n;
  const RationalMatrix g = support_gram(config, support);
  int max_degree = 0;
  std::vector<Polynomial> rhs;
  for (const auto& c : support) {
    rhs.push_back(intersect_curve(config, family, c));
    max_degree = std::max(max_degree, rhs.back().degree());
  }
  std::vector<std::vector<Rational>> coeffs(support.size(), std::vector<Rational>(max_degree + 1));
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<Rational> r;
    for (const auto& p : rhs) r.push_back(p.coeff(static_cast<std::size_t>(d)));
    const auto x = solve_linear(g, r);
    for (std::size_t k = 0; k < support.size(); ++k) coeffs[k][static_cast<std::size_t>(d)] = x[k];
  }
  for (std::size_t k = 0; k < support.size(); ++k) n.set(support[k], Polynomial(coeffs[k]));
  return n;
}

/// Root of a polynomial of degree <= 1; nullopt for constants.
inline std::optional<Rational> linear_root(const Polynomial& p) {
  if (p.degree() > 1) throw Error(Errc::not_applicable, "expected a polynomial of degree <= 1");
  if (p.degree() < 1) return std::nullopt;
  return -p.coeff(0) / p.coeff(1);
}

/// The t at which every coefficient of the family vanishes, if there is one.
inline std::optional<Rational> common_root(const DivisorFamily& family) {
  std::optional<Rational> root;
  for (const auto& [name, p] : family.terms()) {
    const auto r = linear_root(p);
    if (!r) return std::nullopt;
    if (root && *root != *r) return std::nullopt;
    root = r;
  }
  return root;
}

inline std::vector<std::string> sorted_union(std::vector<std::string> s, const std::vector<std::string>& extra) {
  s.insert(s.end(), extra.begin(), extra.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline std::vector<std::string> config_order(const SurfaceConfig& config, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& c : config.curves())
    if (std::find(names.begin(), names.end(), c) != names.end()) out.push_back(c);
  return out;
}

}  // namespace zdetail

/// Zariski decomposition at a single t by iterative support augmentation.
inline PointDecomposition decompose_at(const SurfaceConfig& config, std::int64_t a, std::int64_t b,
                                       const Rational& t) {
  const Rational tau = pseudoeffective_threshold(a, b);
  if (t < 0 || t > tau) {
    throw Error(Errc::out_of_range, "t = " + to_string(t) + " outside [0, " + to_string(tau) + "]");
  }
  const DivisorExpr d = evaluate_family(anticanonical_family(config, a, b), t);
  std::vector<std::string> support;
  DivisorExpr n;
  DivisorExpr p = d;
  for (;;) {
    std::vector<std::string> add;
    for (const auto& c : config.curves()) {
      if (std::find(support.begin(), support.end(), c) != support.end()) continue;
      if (intersect_curve(config, p, c) < 0) add.push_back(c);
    }
    if (add.empty()) break;
    support = zdetail::config_order(config, zdetail::sorted_union(support, add));
    zdetail::require_negative_definite(config, support);
    const RationalMatrix g = zdetail::support_gram(config, support);
    std::vector<Rational> rhs;
    for (const auto& c : support) rhs.push_back(intersect_curve(config, d, c));
    const auto x = solve_linear(g, rhs);
    n = DivisorExpr{};
    for (std::size_t k = 0; k < support.size(); ++k) n.set(support[k], x[k]);
    p = d - n;
  }
  for (const auto& [name, c] : n.terms()) {
    if (c < 0) throw Error(Errc::degenerate_configuration, "negative coefficient of " + name + " in N");
  }
  return {t, p, n, support, self_intersection(config, p)};
}

/// Generic family decomposition: regions are found from the roots of P(t).C.
inline ZariskiDecomposition decompose_family(const SurfaceConfig& config, std::int64_t a, std::int64_t b) {
  const DivisorFamily d = anticanonical_family(config, a, b);
  const Rational e_zero = pseudoeffective_threshold(a, b);
  ZariskiDecomposition out;
  out.a = a;
  out.b = b;
  std::vector<std::string> support;
  Rational start = 0;
  for (std::size_t guard = 0; guard <= config.size() + 1; ++guard) {
    DivisorFamily n, p;
    // Grow the support until P(t).C >= 0 just to the right of start.
    for (;;) {
      n = zdetail::solve_negative(config, d, support);
      p = d - n;
      std::vector<std::string> add;
      for (const auto& c : config.curves()) {
        if (std::find(support.begin(), support.end(), c) != support.end()) continue;
        const Polynomial pc = intersect_curve(config, p, c);
        const Rational v = pc(start);
        if (v < 0 || (v == 0 && pc.coeff(1) < 0)) add.push_back(c);
      }
      if (add.empty()) break;
      support = zdetail::config_order(config, zdetail::sorted_union(support, add));
      zdetail::require_negative_definite(config, support);
    }

    Rational end = e_zero;
    std::string reason = "exceptional-coefficient-zero";
    if (const auto r = zdetail::common_root(p); r && *r > start && *r <= end) {
      end = *r;
      reason = "positive-part-vanishes";
    }
    for (const auto& c : config.curves()) {
      if (std::find(support.begin(), support.end(), c) != support.end()) continue;
      const Polynomial pc = intersect_curve(config, p, c);
      if (!(pc.coeff(1) < 0)) continue;
      const Rational r = *zdetail::linear_root(pc);
      if (r <= start) continue;
      if (r < end) {
        end = r;
        reason.clear();
      }
    }
    out.regions.push_back({start, end, support, n, p});
    if (!reason.empty()) {
      out.tau = end;
      out.tau_reason = reason;
      return out;
    }
    start = end;
  }
  throw Error(Errc::degenerate_configuration, "region search did not terminate");
}

/// Three regions with the breakpoints 0, b, a(3a+4b)/(3a+2b), (a+2b)/2.
inline ZariskiDecomposition closed_form_family(const SurfaceConfig& config, std::int64_t a, std::int64_t b) {
  validate_weights(a, b);
  const Rational ra(static_cast<long>(a)), rb(static_cast<long>(b));
  const DivisorFamily d = anticanonical_family(config, a, b);
  const Rational t1 = rb;
  const Rational t2 = ra * (3 * ra + 4 * rb) / (3 * ra + 2 * rb);
  const Rational tau = pseudoeffective_threshold(a, b);
  const Rational den = 4 * rb * rb - 3 * ra * ra;

  DivisorFamily n2;
  n2.set(curve::L, Polynomial::linear(-rb / (ra + rb), 1 / (ra + rb)));
  DivisorFamily n3;
  n3.set(curve::L, Polynomial::linear(-4 * rb * rb / den, 3 * (2 * rb - ra) / den));
  n3.set(curve::D, Polynomial::linear(-ra * (3 * ra + 4 * rb) / den, (3 * ra + 2 * rb) / den));

  ZariskiDecomposition out;
  out.a = a;
  out.b = b;
  out.tau = tau;
  out.tau_reason = "positive-part-vanishes";
  out.regions.push_back({0, t1, {}, DivisorFamily{}, d});
  out.regions.push_back({t1, t2, {curve::L}, n2, d - n2});
  out.regions.push_back({t2, tau, {curve::L, curve::D}, n3, d - n3});
  return out;
}

struct ZariskiMismatch {
  Rational t;
  std::string what;
};

struct CrossValidationReport {
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::size_t samples = 0;
  std::size_t points_checked = 0;
  bool regions_match = false;  ///< generic family == closed form, polynomial by polynomial
  std::vector<ZariskiMismatch> mismatches;

  bool ok() const { return regions_match && mismatches.empty(); }
};

/// `samples` evenly spaced points per region (endpoints included for samples >= 2).
inline std::vector<Rational> region_samples(const Rational& lo, const Rational& hi, std::size_t samples) {
  if (samples < 1) throw Error(Errc::domain, "samples must be >= 1");
  if (samples == 1) return {(lo + hi) / 2};
  std::vector<Rational> out;
  for (std::size_t k = 0; k < samples; ++k) {
    out.push_back(lo + (hi - lo) * Rational(static_cast<long>(k)) / Rational(static_cast<long>(samples - 1)));
  }
  return out;
}

inline bool same_regions(const ZariskiDecomposition& x, const ZariskiDecomposition& y) {
  if (x.regions.size() != y.regions.size() || x.tau != y.tau) return false;
  for (std::size_t k = 0; k < x.regions.size(); ++k) {
    const auto& r = x.regions[k];
    const auto& s = y.regions[k];
    if (r.lo != s.lo || r.hi != s.hi || !(r.negative == s.negative) || !(r.positive == s.positive)) return false;
  }
  return true;
}

inline CrossValidationReport cross_validate(const SurfaceConfig& config, std::int64_t a, std::int64_t b,
                                            std::size_t samples) {
  CrossValidationReport rep;
  rep.a = a;
  rep.b = b;
  rep.samples = samples;
  const auto closed = closed_form_family(config, a, b);
  const auto generic = decompose_family(config, a, b);
  rep.regions_match = same_regions(closed, generic);

  for (const auto& region : closed.regions) {
    for (const auto& t : region_samples(region.lo, region.hi, samples)) {
      ++rep.points_checked;
      const auto pt = decompose_at(config, a, b, t);
      const DivisorExpr expected = evaluate_family(region.negative, t);
      if (!(pt.negative == expected)) rep.mismatches.push_back({t, "negative part differs from closed form"});
    }
  }
  // Both one-sided closed forms agree with the pointwise answer at every joint.
  for (std::size_t k = 1; k < closed.regions.size(); ++k) {
    const Rational& t = closed.regions[k].lo;
    const DivisorExpr left = evaluate_family(closed.regions[k - 1].negative, t);
    const DivisorExpr right = evaluate_family(closed.regions[k].negative, t);
    const auto pt = decompose_at(config, a, b, t);
    if (!(left == right)) rep.mismatches.push_back({t, "closed form discontinuous at joint"});
    if (!(pt.negative == left)) rep.mismatches.push_back({t, "pointwise decomposition differs at joint"});
  }
  return rep;
}

/// Structural checks on a family decomposition; returns human-readable violations.
inline std::vector<std::string> check_decomposition(const SurfaceConfig& config, const ZariskiDecomposition& z) {
  std::vector<std::string> bad;
  auto note = [&bad](const ZariskiRegion& r, const std::string& what) {
    bad.push_back("[" + to_string(r.lo) + ", " + to_string(r.hi) + "] " + what);
  };
  for (const auto& r : z.regions) {
    if (!r.support.empty() && !is_negative_definite(zdetail::support_gram(config, r.support))) {
      note(r, "support not negative definite");
    }
    for (const auto& [name, c] : r.negative.terms()) {
      if (c(r.lo) < 0 || c(r.hi) < 0) note(r, "negative coefficient of " + name);
      if (c.coeff(1) < 0) note(r, "coefficient of " + name + " decreasing");
    }
    for (const auto& c : config.curves()) {
      const Polynomial pc = intersect_curve(config, r.positive, c);
      const bool in_support = std::find(r.support.begin(), r.support.end(), c) != r.support.end();
      if (in_support && !pc.is_zero()) note(r, "P.C != 0 on support curve " + c);
      if (pc(r.lo) < 0 || pc(r.hi) < 0) note(r, "P not nef on " + c);
    }
  }
  const auto vol = z.volume(config);
  if (!vol.is_continuous()) bad.push_back("volume discontinuous");
  if (vol(0) != kAnticanonicalDegree) bad.push_back("volume at 0 is " + to_string(vol(0)));
  if (vol(z.tau) != 0) bad.push_back("volume at tau is " + to_string(vol(z.tau)));
  const auto dvol = vol.derivative();
  for (std::size_t k = 0; k < dvol.piece_count(); ++k) {
    const Rational lo = dvol.breakpoints()[k], hi = dvol.breakpoints()[k + 1];
    // The derivative is linear on each piece, so its sign on the ends settles monotonicity.
    if (dvol.pieces()[k](lo) > 0 || dvol.pieces()[k](hi) > 0) bad.push_back("volume increasing on a piece");
  }
  return bad;
}

}  // namespace wbdelta

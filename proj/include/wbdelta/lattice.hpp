#pragma once

/**
 * @file lattice.hpp
 * @brief Picard-lattice bookkeeping for the (a,b)-weighted blowup.
 *
 * A SurfaceConfig is a finite list of named curves together with their
 * (rational) intersection matrix. Divisors are rational combinations of the
 * named curves; a DivisorFamily has coefficients that are polynomials in a
 * parameter t (degree <= 1 for everything built here).
 *
 * The intersection numbers of the weighted blowup are declared, not derived
 * from equations; the tests then check every identity that follows from them.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wbdelta/error.hpp"
#include "wbdelta/exactnum/polynomial.hpp"
#include "wbdelta/exactnum/rational.hpp"

namespace wbdelta {

/// Coprime positive weights (a, b) with wt(u) = a along L = {u = 0}.
struct Weights {
  std::int64_t a = 1;
  std::int64_t b = 1;

  friend bool operator==(const Weights&, const Weights&) = default;
  friend auto operator<=>(const Weights&, const Weights&) = default;
};

inline void require_coprime(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) {
    throw Error(Errc::invalid_weights, "weights must be positive, got (" + std::to_string(a) + "," +
                                           std::to_string(b) + ")");
  }
  if (std::gcd(a, b) != 1) {
    throw Error(Errc::invalid_weights, "gcd(" + std::to_string(a) + "," + std::to_string(b) + ") != 1");
  }
}

/// sqrt(3)/2 * a < b <= a, checked as 4b^2 > 3a^2.
inline bool in_chamber(std::int64_t a, std::int64_t b) { return b <= a && 4 * b * b > 3 * a * a; }

/// Coprime and inside the chamber where the three-region Zariski picture holds.
inline Weights validate_weights(std::int64_t a, std::int64_t b) {
  require_coprime(a, b);
  if (!in_chamber(a, b)) {
    throw Error(Errc::chamber_violation, "(" + std::to_string(a) + "," + std::to_string(b) +
                                             ") is outside sqrt(3)/2*a < b <= a");
  }
  return {a, b};
}

/// All chamber pairs with a <= max_a, ordered by (a, b).
inline std::vector<Weights> chamber_pairs(std::int64_t max_a) {
  std::vector<Weights> out;
  for (std::int64_t a = 1; a <= max_a; ++a)
    for (std::int64_t b = 1; b <= a; ++b)
      if (std::gcd(a, b) == 1 && in_chamber(a, b)) out.push_back({a, b});
  return out;
}

class SurfaceConfig {
 public:
  SurfaceConfig() = default;
  SurfaceConfig(std::vector<std::string> curves, std::vector<std::vector<Rational>> gram)
      : curves_(std::move(curves)), gram_(std::move(gram)) {
    const std::size_t n = curves_.size();
    if (gram_.size() != n) throw Error(Errc::domain, "gram size does not match curve count");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen.insert(curves_[i]).second) throw Error(Errc::domain, "duplicate curve name " + curves_[i]);
      if (gram_[i].size() != n) throw Error(Errc::domain, "gram is not square");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (gram_[i][j] != gram_[j][i]) throw Error(Errc::domain, "gram is not symmetric");
  }

  std::size_t size() const { return curves_.size(); }
  const std::vector<std::string>& curves() const { return curves_; }
  const std::vector<std::vector<Rational>>& gram() const { return gram_; }

  bool has(const std::string& name) const {
    return std::find(curves_.begin(), curves_.end(), name) != curves_.end();
  }

  std::size_t index(const std::string& name) const {
    auto it = std::find(curves_.begin(), curves_.end(), name);
    if (it == curves_.end()) throw Error(Errc::domain, "unknown curve " + name);
    return static_cast<std::size_t>(it - curves_.begin());
  }

  const Rational& intersection(const std::string& x, const std::string& y) const {
    return gram_[index(x)][index(y)];
  }
  const Rational& self_intersection(const std::string& x) const { return intersection(x, x); }

 private:
  std::vector<std::string> curves_;
  std::vector<std::vector<Rational>> gram_;
};

/// Rational (or polynomial-in-t) combination of named curves.
template <class Coeff>
class BasicDivisor {
 public:
  BasicDivisor() = default;
  BasicDivisor(std::initializer_list<std::pair<const std::string, Coeff>> terms) {
    for (const auto& [name, c] : terms) set(name, c);
  }

  Coeff coefficient(const std::string& name) const {
    auto it = coeffs_.find(name);
    return it == coeffs_.end() ? Coeff(Rational(0)) : it->second;
  }

  void set(const std::string& name, const Coeff& c) {
    if (c == Coeff(Rational(0))) coeffs_.erase(name);
    else coeffs_[name] = c;
  }

  const std::map<std::string, Coeff>& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  friend BasicDivisor operator+(BasicDivisor x, const BasicDivisor& y) {
    for (const auto& [name, c] : y.coeffs_) x.set(name, x.coefficient(name) + c);
    return x;
  }
  friend BasicDivisor operator-(BasicDivisor x, const BasicDivisor& y) {
    for (const auto& [name, c] : y.coeffs_) x.set(name, x.coefficient(name) - c);
    return x;
  }
  friend BasicDivisor operator*(const Coeff& s, const BasicDivisor& x) {
    BasicDivisor out;
    for (const auto& [name, c] : x.coeffs_) out.set(name, s * c);
    return out;
  }
  friend bool operator==(const BasicDivisor& x, const BasicDivisor& y) { return x.coeffs_ == y.coeffs_; }

 private:
  std::map<std::string, Coeff> coeffs_;
};

using DivisorExpr = BasicDivisor<Rational>;
using DivisorFamily = BasicDivisor<Polynomial>;

/// Bilinear intersection pairing.
template <class Coeff>
Coeff intersect(const SurfaceConfig& config, const BasicDivisor<Coeff>& x, const BasicDivisor<Coeff>& y) {
  Coeff acc = Coeff(Rational(0));
  for (const auto& [n1, c1] : x.terms())
    for (const auto& [n2, c2] : y.terms()) acc = acc + c1 * c2 * Coeff(config.intersection(n1, n2));
  return acc;
}

template <class Coeff>
Coeff intersect_curve(const SurfaceConfig& config, const BasicDivisor<Coeff>& x, const std::string& curve) {
  Coeff acc = Coeff(Rational(0));
  for (const auto& [name, c] : x.terms()) acc = acc + c * Coeff(config.intersection(name, curve));
  return acc;
}

template <class Coeff>
Coeff self_intersection(const SurfaceConfig& config, const BasicDivisor<Coeff>& x) {
  return intersect(config, x, x);
}

inline DivisorExpr evaluate_family(const DivisorFamily& family, const Rational& t) {
  DivisorExpr out;
  for (const auto& [name, p] : family.terms()) out.set(name, p(t));
  return out;
}

namespace curve {
inline const std::string E = "E";  ///< exceptional divisor of the weighted blowup
inline const std::string L = "L";  ///< strict transform of the (-1)-curve L
inline const std::string D = "D";  ///< strict transform of the companion curve D
}  // namespace curve

/// (-K_X)^2 for a del Pezzo surface of degree 2.
inline const Rational kAnticanonicalDegree{2};

enum class ChamberCheck { enforce, skip };

/// Curves {E, L, D} on X_{a,b} with their intersection numbers. With
/// ChamberCheck::skip only coprimality is required; the gram is the same
/// formula, but the three-region Zariski picture no longer applies.
inline SurfaceConfig build_wbu_config(std::int64_t a, std::int64_t b,
                                      ChamberCheck check = ChamberCheck::enforce) {
  if (check == ChamberCheck::enforce) validate_weights(a, b);
  else require_coprime(a, b);
  const Rational ra(static_cast<long>(a)), rb(static_cast<long>(b));
  const Rational ee = -1 / (ra * rb);
  const Rational ll = -(ra + rb) / rb;
  const Rational dd = 3 - 4 * rb / ra;
  const Rational le = 1 / rb;
  const Rational de = 2 / ra;
  const Rational dl = 1;
  return SurfaceConfig({curve::E, curve::L, curve::D}, {{ee, le, de}, {le, ll, dl}, {de, dl, dd}});
}

/// pi^*(-K_X) - tE = 1/2 L + 1/2 D + ((a+2b)/2 - t) E.
inline DivisorFamily anticanonical_family(const SurfaceConfig& config, std::int64_t a, std::int64_t b) {
  for (const auto* name : {&curve::E, &curve::L, &curve::D}) config.index(*name);
  const Rational half = make_rational(1, 2);
  DivisorFamily family;
  family.set(curve::L, Polynomial(half));
  family.set(curve::D, Polynomial(half));
  family.set(curve::E, Polynomial::linear(make_rational(a + 2 * b, 2), Rational(-1)));
  return family;
}

/// Log discrepancy A_X(E) of the (a,b)-weighted blowup of a smooth point.
inline Rational log_discrepancy_E(std::int64_t a, std::int64_t b) {
  require_coprime(a, b);
  return Rational(static_cast<long>(a + b));
}

/// In-place contraction of the (-1)-curve at index x of `gram`; only pairs of
/// curves meeting x change. `alive` marks the curves still on the surface.
inline void contract_in_place(std::vector<std::vector<Rational>>& gram, std::vector<bool>& alive, std::size_t x) {
  std::vector<std::size_t> touching;
  for (std::size_t i = 0; i < gram.size(); ++i)
    if (alive[i] && i != x && gram[i][x] != 0) touching.push_back(i);
  for (auto i : touching)
    for (auto j : touching) gram[i][j] += gram[i][x] * gram[j][x];
  alive[x] = false;
}

/// Contracts a (-1)-curve X: C.C' becomes C.C' + (C.X)(C'.X).
inline SurfaceConfig blowdown_update(const SurfaceConfig& config, const std::string& contracted) {
  const std::size_t x = config.index(contracted);
  const Rational& xx = config.gram()[x][x];
  if (xx != -1) {
    throw Error(Errc::not_contractible, contracted + " has self-intersection " + to_string(xx));
  }
  auto gram = config.gram();
  std::vector<bool> alive(config.size(), true);
  contract_in_place(gram, alive, x);
  std::vector<std::string> names;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (!alive[i]) continue;
    names.push_back(config.curves()[i]);
    keep.push_back(i);
  }
  std::vector<std::vector<Rational>> out(keep.size(), std::vector<Rational>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) out[i][j] = gram[keep[i]][keep[j]];
  return SurfaceConfig(std::move(names), std::move(out));
}

}  // namespace wbdelta

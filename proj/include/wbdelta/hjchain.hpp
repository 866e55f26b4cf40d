#pragma once

/**
 * @file hjchain.hpp
 * @brief Hirzebruch-Jung resolution of the two cyclic quotient points of X_{a,b}.
 *
 * The p-side chain runs d_{-1} = a, d_0 = b, d_k = -d_{k-2} + m_k d_{k-1}
 * with m_k = ceil(d_{k-2} / d_{k-1}), until d_{i0} = 1. The q-side chain is the
 * same recursion on c_{-1} = b, c_0 = a. Coefficients d_k = mu_k b + lambda_k a
 * and c_k = beta_k b + alpha_k a follow the same recursion.
 *
 * The minimal resolution contains the chain
 *
 *     L - E(1) - ... - E(i0) - Ebar - F(j0) - ... - F(1)
 *
 * and contracting everything except L and F(1) gives a weak del Pezzo surface
 * of degree 1. The continued-fraction profile of (a, b) (Euclid on b and
 * delta = a - b) predicts the chain lengths and the contraction order.
 */

#include <cstdint>
#include <numeric>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wbdelta/error.hpp"
#include "wbdelta/exactnum/linalg.hpp"
#include "wbdelta/exactnum/rational.hpp"
#include "wbdelta/lattice.hpp"

namespace wbdelta {

namespace hjdetail {

inline void require_resolvable(std::int64_t a, std::int64_t b) {
  require_coprime(a, b);
  if (b > a) throw Error(Errc::invalid_weights, "expected b <= a");
}

inline std::int64_t ceil_div(std::int64_t x, std::int64_t y) { return x / y + ((x % y != 0) && ((x > 0) == (y > 0))); }

}  // namespace hjdetail

struct CFProfile {
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::int64_t delta = 0;
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::vector<std::int64_t> j_list;      ///< j_1..j_{k0}
  std::vector<std::int64_t> gamma_list;  ///< gamma_0..gamma_{k0}
  std::optional<std::size_t> k0;
  std::vector<std::int64_t> so;  ///< so_0, so_1, ...
  std::vector<std::int64_t> se;  ///< se_0, se_1, ...
  bool trivial = false;             ///< a = b = 1
  bool terminated_at_zero = false;  ///< delta = 1 forces gamma_0 = 0

  /// Euclid quotients [i, j, j_1, ..., j_{k0}]; [b] when delta = 1; empty for (1,1).
  std::vector<std::int64_t> quotients() const {
    if (trivial) return {};
    if (terminated_at_zero) return {i};
    std::vector<std::int64_t> q{i, j};
    q.insert(q.end(), j_list.begin(), j_list.end());
    return q;
  }

  /// Rebuilds (a, b) by running the division chain backwards.
  std::pair<std::int64_t, std::int64_t> reconstruct() const {
    if (trivial) return {1, 1};
    if (terminated_at_zero) return {i + 1, i};
    // gamma_{k0+1} = 0, gamma_{k0} = 1, gamma_k = gamma_{k+1} j_{k+1} + gamma_{k+2}.
    std::int64_t next = 1, after = 0;
    for (std::size_t k = j_list.size(); k-- > 0;) {
      const std::int64_t g = next * j_list[k] + after;
      after = next;
      next = g;
    }
    const std::int64_t d = next * j + after;  // delta = gamma_0 j + gamma_1
    const std::int64_t bb = d * i + next;     // b = delta i + gamma_0
    return {bb + d, bb};
  }
};

inline CFProfile cf_profile(std::int64_t a, std::int64_t b) {
  hjdetail::require_resolvable(a, b);
  CFProfile p;
  p.a = a;
  p.b = b;
  p.delta = a - b;
  if (a == b) {
    p.trivial = true;
    p.so = {0};
    p.se = {0};
    return p;
  }
  const std::int64_t delta = p.delta;
  p.i = b / delta;
  const std::int64_t gamma0 = b % delta;
  p.gamma_list.push_back(gamma0);
  if (gamma0 == 0) {
    p.terminated_at_zero = true;
    p.so = {0};
    p.se = {0};
    return p;
  }
  p.j = delta / gamma0;
  std::int64_t prev = delta, cur = gamma0;
  while (cur != 1) {
    const std::int64_t rem = prev % cur;
    p.gamma_list.push_back(rem);
    prev = cur;
    cur = rem;
  }
  for (std::size_t k = 1; k < p.gamma_list.size(); ++k) p.j_list.push_back(p.gamma_list[k - 1] / p.gamma_list[k]);
  p.k0 = p.gamma_list.size() - 1;
  p.so = {0};
  p.se = {0};
  for (std::size_t m = 1; 2 * m - 1 <= p.j_list.size(); ++m) p.so.push_back(p.so.back() + p.j_list[2 * m - 2]);
  for (std::size_t m = 1; 2 * m <= p.j_list.size(); ++m) p.se.push_back(p.se.back() + p.j_list[2 * m - 1]);
  return p;
}

/// A side of the resolution: values, multipliers and (b-coefficient, a-coefficient)
/// pairs indexed from k = -1.
struct HJSide {
  std::vector<std::int64_t> values;    ///< v_{-1}, v_0, v_1, ..., v_len = 1
  std::vector<std::int64_t> mults;     ///< m_1..m_len
  std::vector<std::int64_t> b_coeff;   ///< from k = -1
  std::vector<std::int64_t> a_coeff;   ///< from k = -1

  std::size_t length() const { return mults.size(); }
  std::int64_t value(std::int64_t k) const { return values.at(static_cast<std::size_t>(k + 1)); }
  std::int64_t mult(std::int64_t k) const { return mults.at(static_cast<std::size_t>(k - 1)); }
  std::int64_t bc(std::int64_t k) const { return b_coeff.at(static_cast<std::size_t>(k + 1)); }
  std::int64_t ac(std::int64_t k) const { return a_coeff.at(static_cast<std::size_t>(k + 1)); }
};

namespace hjdetail {

inline HJSide run_side(std::int64_t first, std::int64_t second, std::pair<std::int64_t, std::int64_t> c_first,
                       std::pair<std::int64_t, std::int64_t> c_second) {
  HJSide s;
  s.values = {first, second};
  s.b_coeff = {c_first.first, c_second.first};
  s.a_coeff = {c_first.second, c_second.second};
  while (s.values.back() != 1) {
    const std::size_t n = s.values.size();
    const std::int64_t m = ceil_div(s.values[n - 2], s.values[n - 1]);
    s.mults.push_back(m);
    s.values.push_back(-s.values[n - 2] + m * s.values[n - 1]);
    s.b_coeff.push_back(-s.b_coeff[n - 2] + m * s.b_coeff[n - 1]);
    s.a_coeff.push_back(-s.a_coeff[n - 2] + m * s.a_coeff[n - 1]);
  }
  return s;
}

}  // namespace hjdetail

struct ChainCurve {
  std::string name;
  Rational self_intersection;
};

struct HJResolution {
  std::int64_t a = 1;
  std::int64_t b = 1;
  HJSide p_side;  ///< d, m, mu (b-coeff), lambda (a-coeff)
  HJSide q_side;  ///< c, n, beta (b-coeff), alpha (a-coeff)
  std::int64_t i0 = 0;
  std::int64_t j0 = 0;
  std::vector<ChainCurve> chain;  ///< L, E1..E{i0}, Ebar, F{j0}..F1
  Rational l_bar_selfint;
  Rational e_check_selfint;  ///< E after the p-side only: -mu_{i0}/a
  Rational e_bar_selfint;    ///< -1

  std::vector<std::int64_t> d_seq() const { return tail(p_side.values); }
  std::vector<std::int64_t> c_seq() const { return tail(q_side.values); }
  std::vector<std::int64_t> mu_seq() const { return tail(p_side.b_coeff); }
  std::vector<std::int64_t> lambda_seq() const { return tail(p_side.a_coeff); }
  std::vector<std::int64_t> beta_seq() const { return tail(q_side.b_coeff); }
  std::vector<std::int64_t> alpha_seq() const { return tail(q_side.a_coeff); }

  Rational self_intersection(const std::string& name) const {
    for (const auto& c : chain)
      if (c.name == name) return c.self_intersection;
    throw Error(Errc::domain, "no chain curve " + name);
  }

  SurfaceConfig chain_config() const {
    std::vector<std::string> names;
    RationalMatrix gram(chain.size(), std::vector<Rational>(chain.size(), Rational(0)));
    for (std::size_t k = 0; k < chain.size(); ++k) {
      names.push_back(chain[k].name);
      gram[k][k] = chain[k].self_intersection;
      if (k + 1 < chain.size()) gram[k][k + 1] = gram[k + 1][k] = 1;
    }
    return SurfaceConfig(std::move(names), std::move(gram));
  }

 private:
  static std::vector<std::int64_t> tail(const std::vector<std::int64_t>& v) { return {v.begin() + 2, v.end()}; }
};

inline const std::string kEBar = "Ebar";
inline std::string e_curve(std::int64_t k) { return "E" + std::to_string(k); }
inline std::string f_curve(std::int64_t k) { return "F" + std::to_string(k); }

inline HJResolution resolve(std::int64_t a, std::int64_t b) {
  hjdetail::require_resolvable(a, b);
  HJResolution r;
  r.a = a;
  r.b = b;
  r.p_side = hjdetail::run_side(a, b, {0, 1}, {1, 0});
  r.q_side = hjdetail::run_side(b, a, {1, 0}, {0, 1});
  r.i0 = static_cast<std::int64_t>(r.p_side.length());
  r.j0 = static_cast<std::int64_t>(r.q_side.length());
  if (a == b) {
    // Smooth point: the ordinary blowup, E^2 = -1 already.
    r.l_bar_selfint = -2;
    r.e_check_selfint = -1;
    r.e_bar_selfint = -1;
    r.chain = {{curve::L, r.l_bar_selfint}, {kEBar, r.e_bar_selfint}};
    return r;
  }
  const auto& p = r.p_side;
  const auto& q = r.q_side;
  r.l_bar_selfint = -(1 + hjdetail::ceil_div(a, b));
  r.e_check_selfint = make_rational(-p.bc(r.i0), a);
  r.e_bar_selfint = -1;
  r.chain.push_back({curve::L, r.l_bar_selfint});
  for (std::int64_t k = 1; k <= r.i0; ++k) {
    r.chain.push_back({e_curve(k), Rational(static_cast<long>(k < r.i0 ? -p.mult(k + 1) : -p.value(r.i0 - 1)))});
  }
  r.chain.push_back({kEBar, r.e_bar_selfint});
  for (std::int64_t k = r.j0; k >= 1; --k) {
    r.chain.push_back({f_curve(k), Rational(static_cast<long>(k < r.j0 ? -q.mult(k + 1) : -q.value(r.j0 - 1)))});
  }
  return r;
}

struct SelfIntLemmaReport {
  std::int64_t a = 1;
  std::int64_t b = 1;
  Rational p_side_sum;  ///< -1/(ab) - sum 1/(d_{k-1} d_k)
  Rational p_side_expected;
  Rational q_side_sum;  ///< continues with - sum 1/(c_{k-1} c_k)
  Rational q_side_expected{-1};
  Integer identity;  ///< alpha_{j0} mu_{i0} - beta_{j0} lambda_{i0}
  bool p_side_ok = false;
  bool q_side_ok = false;
  bool identity_ok = false;

  bool ok() const { return p_side_ok && q_side_ok && identity_ok; }
};

inline SelfIntLemmaReport verify_selfint_lemmas(std::int64_t a, std::int64_t b) {
  const HJResolution r = resolve(a, b);
  SelfIntLemmaReport rep;
  rep.a = a;
  rep.b = b;
  Rational s = make_rational(-1, a * b);
  for (std::int64_t k = 1; k <= r.i0; ++k) s -= make_rational(1, r.p_side.value(k - 1) * r.p_side.value(k));
  rep.p_side_sum = s;
  rep.p_side_expected = r.e_check_selfint;
  for (std::int64_t k = 1; k <= r.j0; ++k) s -= make_rational(1, r.q_side.value(k - 1) * r.q_side.value(k));
  rep.q_side_sum = s;
  rep.identity = Integer(static_cast<long>(r.q_side.ac(r.j0))) * static_cast<long>(r.p_side.bc(r.i0)) -
                 Integer(static_cast<long>(r.q_side.bc(r.j0))) * static_cast<long>(r.p_side.ac(r.i0));
  rep.p_side_ok = rep.p_side_sum == rep.p_side_expected;
  rep.q_side_ok = rep.q_side_sum == rep.q_side_expected;
  rep.identity_ok = rep.identity == 1;
  return rep;
}

/// i0 / j0 predicted from the profile, compared with the recursion.
struct ChainShapeCheck {
  std::string method;  ///< "k0-even", "k0-odd", "delta-one-shortcut", "trivial"
  std::int64_t i0 = 0;
  std::int64_t j0 = 0;
  std::int64_t i0_closed = 0;
  std::int64_t j0_closed = 0;
  std::int64_t i0_quotients = 0;  ///< same prediction from the quotient list alone
  std::int64_t j0_quotients = 0;
  /// Terminal self-intersections (E(i0), F(j0), F(1)); compared only when delta > 1 and a < 2b.
  bool terminal_checked = false;
  std::vector<std::pair<Rational, Rational>> terminal;  ///< (resolution, closed form)
  bool ok = false;
};

inline ChainShapeCheck reconcile_chain_shape(std::int64_t a, std::int64_t b) {
  const CFProfile p = cf_profile(a, b);
  const HJResolution r = resolve(a, b);
  ChainShapeCheck c;
  c.i0 = r.i0;
  c.j0 = r.j0;

  const auto q = p.quotients();
  std::int64_t even = 0, odd = 0;
  for (std::size_t k = 0; k < q.size(); ++k) (k % 2 == 0 ? even : odd) += q[k];
  const bool last_on_e = q.size() % 2 == 1;
  c.i0_quotients = q.empty() ? 0 : even - (last_on_e ? 1 : 0);
  c.j0_quotients = q.empty() ? 0 : 1 + odd - (last_on_e ? 0 : 1);

  if (p.trivial) {
    c.method = "trivial";
    c.i0_closed = c.j0_closed = 0;
  } else if (p.terminated_at_zero) {
    c.method = "delta-one-shortcut";
    c.i0_closed = b - 1;
    c.j0_closed = 1;
  } else {
    const std::size_t k0 = *p.k0;
    const std::size_t n0 = k0 / 2;
    if (k0 % 2 == 0) {
      c.method = "k0-even";
      c.i0_closed = p.i + p.so[n0];
      c.j0_closed = p.j + p.se[n0];
    } else {
      c.method = "k0-odd";
      c.i0_closed = p.i + p.so[n0 + 1] - 1;
      c.j0_closed = p.j + p.se[n0] + 1;
    }
    if (p.delta < b && r.i0 >= 1 && r.j0 >= 2) {
      c.terminal_checked = true;
      const std::int64_t last_j = k0 == 0 ? p.j : p.j_list.back();
      const Rational e_end = k0 % 2 == 0 ? Rational(static_cast<long>(-(last_j + 1))) : Rational(-2);
      const Rational f_end = k0 % 2 == 0 ? Rational(-2) : Rational(static_cast<long>(-(last_j + 1)));
      c.terminal = {{r.self_intersection(e_curve(r.i0)), e_end},
                    {r.self_intersection(f_curve(r.j0)), f_end},
                    {r.self_intersection(f_curve(1)), Rational(static_cast<long>(-(p.i + 2)))}};
    }
  }
  c.ok = c.i0 == c.i0_closed && c.j0 == c.j0_closed && c.i0 == c.i0_quotients && c.j0 == c.j0_quotients;
  for (const auto& [got, want] : c.terminal) c.ok = c.ok && got == want;
  return c;
}

struct ContractionStep {
  std::string curve;
  Rational self_intersection;  ///< at its turn
  bool contractible = false;
};

struct ContractionReport {
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::vector<std::string> plan;
  std::vector<ContractionStep> steps;
  bool plan_mismatch = false;
  std::string mismatch_detail;
  std::int64_t expected_count = 0;  ///< i0 + j0
  std::int64_t profile_count = 0;   ///< i + j + sum j_k (sum of quotients)
  std::vector<std::string> survivors;
  std::string final_exceptional;
  Rational final_exceptional_selfint;
  Rational l_final_selfint;
  Rational e_bar_k_coefficient;  ///< K_Y = pi^* K_X + sum x_C C
  Rational final_k_coefficient;
  Rational anticanonical_square;

  bool ok() const {
    return !plan_mismatch && static_cast<std::int64_t>(plan.size()) == expected_count &&
           expected_count == profile_count && final_exceptional_selfint == -1 && l_final_selfint == -2 &&
           e_bar_k_coefficient == a + b - 1 && anticanonical_square == 1;
  }
};

/// Ebar first, then the quotient runs from last to first, each in decreasing
/// index. E-runs continue from E(1), F-runs from F(2); the last run is one short.
inline std::vector<std::string> contraction_order(const CFProfile& p) {
  if (p.trivial) return {};
  const auto q = p.quotients();
  std::vector<std::vector<std::string>> runs;
  std::int64_t e_next = 1, f_next = 2;
  for (std::size_t k = 0; k < q.size(); ++k) {
    std::vector<std::string> run;
    for (std::int64_t t = 0; t < q[k]; ++t) run.push_back(k % 2 == 0 ? e_curve(e_next++) : f_curve(f_next++));
    runs.push_back(std::move(run));
  }
  if (!runs.empty() && !runs.back().empty()) runs.back().pop_back();
  std::vector<std::string> out{kEBar};
  for (auto run = runs.rbegin(); run != runs.rend(); ++run) out.insert(out.end(), run->rbegin(), run->rend());
  return out;
}

inline ContractionReport contraction_plan(std::int64_t a, std::int64_t b) {
  const CFProfile profile = cf_profile(a, b);
  const HJResolution r = resolve(a, b);
  ContractionReport rep;
  rep.a = a;
  rep.b = b;
  rep.plan = contraction_order(profile);
  rep.expected_count = r.i0 + r.j0;
  for (auto q : profile.quotients()) rep.profile_count += q;

  // Adjunction on the exceptional curves: sum_C' x_C' (C'.C) = -2 - C^2.
  const SurfaceConfig full = r.chain_config();
  std::vector<std::string> exc(full.curves().begin() + 1, full.curves().end());
  RationalMatrix g(exc.size(), std::vector<Rational>(exc.size()));
  std::vector<Rational> rhs;
  for (std::size_t i = 0; i < exc.size(); ++i) {
    for (std::size_t j = 0; j < exc.size(); ++j) g[i][j] = full.intersection(exc[i], exc[j]);
    rhs.push_back(-2 - g[i][i]);
  }
  const auto x = solve_linear(g, rhs);
  auto k_coeff = [&](const std::string& name) {
    for (std::size_t i = 0; i < exc.size(); ++i)
      if (exc[i] == name) return x[i];
    throw Error(Errc::domain, "no exceptional curve " + name);
  };
  rep.e_bar_k_coefficient = k_coeff(kEBar);

  auto gram = full.gram();
  std::vector<bool> alive(full.size(), true);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < full.size(); ++i) index[full.curves()[i]] = i;
  for (const auto& name : rep.plan) {
    const auto it = index.find(name);
    const bool present = it != index.end() && alive[it->second];
    ContractionStep step{name, present ? gram[it->second][it->second] : Rational(0)};
    step.contractible = present && step.self_intersection == -1;
    rep.steps.push_back(step);
    if (!step.contractible) {
      rep.plan_mismatch = true;
      rep.mismatch_detail = name + (present ? " has self-intersection " + to_string(step.self_intersection)
                                            : " is not on the surface");
      break;
    }
    contract_in_place(gram, alive, it->second);
  }
  std::vector<std::string> names;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (!alive[i]) continue;
    names.push_back(full.curves()[i]);
    keep.push_back(i);
  }
  RationalMatrix left(keep.size(), std::vector<Rational>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) left[i][j] = gram[keep[i]][keep[j]];
  const SurfaceConfig cfg(std::move(names), std::move(left));
  rep.survivors = cfg.curves();
  if (!rep.plan_mismatch) {
    rep.final_exceptional = r.j0 >= 1 ? f_curve(1) : kEBar;
    rep.final_exceptional_selfint = cfg.self_intersection(rep.final_exceptional);
    rep.l_final_selfint = cfg.self_intersection(curve::L);
    rep.final_k_coefficient = k_coeff(rep.final_exceptional);
    rep.anticanonical_square =
        kAnticanonicalDegree + rep.final_k_coefficient * rep.final_k_coefficient * rep.final_exceptional_selfint;
  }
  return rep;
}

struct MultiplicityTrace {
  std::vector<Rational> e_seq;  ///< e_0, e_1, ...
  std::vector<Rational> f_seq;  ///< f_1, f_2, ...
  Rational e;
};

/// Coefficient of the surviving curve in the pullback of D, run along the
/// contraction order in reverse: every new coefficient adds the latest one
/// from the opposite side.
inline MultiplicityTrace multiplicity_trace(std::int64_t a, std::int64_t b) {
  const CFProfile p = cf_profile(a, b);
  MultiplicityTrace t;
  t.e_seq = {Rational(0)};
  t.f_seq = {Rational(2)};
  const auto q = p.quotients();
  for (std::size_t k = 0; k < q.size(); ++k) {
    const std::int64_t steps = k + 1 == q.size() ? q[k] - 1 : q[k];
    for (std::int64_t s = 0; s < steps; ++s) {
      if (k % 2 == 0) t.e_seq.push_back(t.e_seq.back() + t.f_seq.back());
      else t.f_seq.push_back(t.f_seq.back() + t.e_seq.back());
    }
  }
  t.e = t.e_seq.back() + t.f_seq.back();
  return t;
}

inline Rational multiplicity_of_D(std::int64_t a, std::int64_t b) { return multiplicity_trace(a, b).e; }

}  // namespace wbdelta

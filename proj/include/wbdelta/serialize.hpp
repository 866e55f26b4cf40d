#pragma once

// JSON views of the computed objects. Every exact scalar is a string that the
// exactnum parsers read back; decimals appear only under *_decimal_nonauthoritative keys.

#include <string>
#include <vector>

#include <json.hpp>

#include "wbdelta/azflag.hpp"
#include "wbdelta/hjchain.hpp"
#include "wbdelta/svalues.hpp"
#include "wbdelta/zariski.hpp"

namespace wbdelta::json {

using Json = nlohmann::ordered_json;

inline Json exact(const Rational& q) { return to_string(q); }

inline Json exact_list(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(exact(q));
  return out;
}

inline Json with_shadow(const Rational& q) {
  return Json{{"exact", to_string(q)}, {"decimal_nonauthoritative", decimal_shadow(to_double(q))}};
}

inline Json quad(const QuadExt& x) {
  return Json{{"exact", to_string(x)},
              {"display", to_display_string(x)},
              {"factored", to_factored_string(x)},
              {"decimal_nonauthoritative", decimal_shadow(x.to_double())}};
}

inline Json divisor(const DivisorExpr& d) {
  Json out = Json::object();
  for (const auto& [name, c] : d.terms()) out[name] = exact(c);
  return out;
}

inline Json family(const DivisorFamily& d) {
  Json out = Json::object();
  for (const auto& [name, c] : d.terms()) out[name] = c.to_string();
  return out;
}

inline Json piecewise(const PiecewisePolynomial& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) pieces.push_back(p.to_string());
  return Json{{"breakpoints", exact_list(f.breakpoints())}, {"pieces", pieces}};
}

inline Json config(const SurfaceConfig& c) {
  Json gram = Json::array();
  for (const auto& row : c.gram()) gram.push_back(exact_list(row));
  return Json{{"curves", c.curves()}, {"gram", gram}};
}

inline Json profile(const CFProfile& p) {
  Json out{{"a", p.a}, {"b", p.b}, {"delta", p.delta}, {"quotients", p.quotients()}};
  out["gamma"] = p.gamma_list;
  if (p.k0) out["k0"] = *p.k0;
  else out["k0"] = nullptr;
  out["terminated_at_zero"] = p.terminated_at_zero;
  return out;
}

inline Json resolution(const HJResolution& r) {
  Json chain = Json::array();
  for (const auto& c : r.chain) chain.push_back(Json{{"curve", c.name}, {"self_intersection", exact(c.self_intersection)}});
  return Json{{"i0", r.i0},
              {"j0", r.j0},
              {"d", r.d_seq()},
              {"c", r.c_seq()},
              {"mu", r.mu_seq()},
              {"lambda", r.lambda_seq()},
              {"beta", r.beta_seq()},
              {"alpha", r.alpha_seq()},
              {"chain", chain},
              {"l_bar_selfint", exact(r.l_bar_selfint)},
              {"e_check_selfint", exact(r.e_check_selfint)},
              {"e_bar_selfint", exact(r.e_bar_selfint)}};
}

inline Json lemmas(const SelfIntLemmaReport& r) {
  return Json{{"p_side_sum", exact(r.p_side_sum)},   {"p_side_expected", exact(r.p_side_expected)},
              {"q_side_sum", exact(r.q_side_sum)},   {"q_side_expected", exact(r.q_side_expected)},
              {"identity", r.identity.get_str()},    {"ok", r.ok()}};
}

inline Json chain_shape(const ChainShapeCheck& c) {
  Json terminal = Json::array();
  for (const auto& [got, want] : c.terminal) terminal.push_back(Json{exact(got), exact(want)});
  return Json{{"method", c.method},
              {"i0", c.i0},
              {"j0", c.j0},
              {"i0_closed", c.i0_closed},
              {"j0_closed", c.j0_closed},
              {"i0_quotients", c.i0_quotients},
              {"j0_quotients", c.j0_quotients},
              {"terminal_checked", c.terminal_checked},
              {"terminal", terminal},
              {"ok", c.ok}};
}

inline Json contraction(const ContractionReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back(Json{{"curve", s.curve}, {"self_intersection", exact(s.self_intersection)}, {"contractible", s.contractible}});
  return Json{{"plan", r.plan},
              {"count", r.plan.size()},
              {"expected_count", r.expected_count},
              {"steps", steps},
              {"plan_mismatch", r.plan_mismatch},
              {"mismatch_detail", r.mismatch_detail},
              {"survivors", r.survivors},
              {"final_exceptional", r.final_exceptional},
              {"final_exceptional_selfint", exact(r.final_exceptional_selfint)},
              {"l_final_selfint", exact(r.l_final_selfint)},
              {"e_bar_k_coefficient", exact(r.e_bar_k_coefficient)},
              {"anticanonical_square", exact(r.anticanonical_square)},
              {"ok", r.ok()}};
}

inline Json zariski(const ZariskiDecomposition& z) {
  Json regions = Json::array();
  for (const auto& r : z.regions) {
    regions.push_back(Json{{"lo", exact(r.lo)},
                           {"hi", exact(r.hi)},
                           {"support", r.support},
                           {"negative", family(r.negative)},
                           {"positive", family(r.positive)}});
  }
  return Json{{"breakpoints", exact_list(z.breakpoints())},
              {"tau", exact(z.tau)},
              {"tau_reason", z.tau_reason},
              {"regions", regions}};
}

inline Json cross_validation(const CrossValidationReport& r) {
  Json mism = Json::array();
  for (const auto& m : r.mismatches) mism.push_back(Json{{"t", exact(m.t)}, {"what", m.what}});
  return Json{{"samples_per_region", r.samples},
              {"points_checked", r.points_checked},
              {"regions_match", r.regions_match},
              {"mismatches", mism},
              {"ok", r.ok()}};
}

inline Json ratio_minimum(const RatioMinimum& m) {
  Json crit = Json::array();
  for (const auto& c : m.critical_points) crit.push_back(quad(c));
  return Json{{"argmin", quad(m.argmin)},
              {"min", quad(m.min)},
              {"derivative_numerator", m.derivative_numerator.to_string("mu")},
              {"derivative_scale", exact(m.derivative_scale)},
              {"critical_points", crit},
              {"sign_at_lo", m.sign_at_lo},
              {"sign_at_hi", m.sign_at_hi},
              {"certificate", m.certificate}};
}

inline Json limit(const LimitEntry& e) { return Json{{"value", quad(e.value)}, {"degree", e.degree}}; }

inline Json point_report(const PointReport& p) {
  Json out{{"point", point_name(p.id)},
           {"convention", convention_name(p.convention)},
           {"oracle_s_at_1_1", exact(p.oracle_s)},
           {"closed_form_s_at_1_1", exact(p.displayed_s)},
           {"formula_flag", flag_name(p.formula_flag)}};
  if (p.first_mismatch) out["first_mismatch"] = Json{p.first_mismatch->a, p.first_mismatch->b};
  else out["first_mismatch"] = nullptr;
  out["oracle_form_verified"] = p.oracle_form_verified;
  out["entry"] = p.displayed_entry;
  out["entry_limit"] = limit(p.displayed_entry_limit);
  out["displayed_limit"] = quad(p.displayed_limit_value);
  out["limit_flag"] = flag_name(p.limit_flag);
  out["oracle_entry"] = p.oracle_entry;
  out["oracle_entry_limit"] = limit(p.oracle_entry_limit);
  return out;
}

inline Json reference(const std::vector<ReferenceCase>& table) {
  Json out = Json::array();
  for (const auto& c : table)
    out.push_back(Json{{"case", c.number}, {"point_type", c.point_type}, {"delta", c.value}, {"lo", exact(c.lo)}, {"hi", exact(c.hi)}});
  return out;
}

inline Json svalue_report(const SValueReport& r) {
  Json points = Json::array();
  for (const auto& p : r.points) points.push_back(point_report(p));
  return Json{{"direction", Json{quad(r.direction.a), quad(r.direction.b)}},
              {"sweep_max_a", r.sweep_max_a},
              {"points", points},
              {"global_entry", limit(r.global)},
              {"lambda", quad(r.lambda)},
              {"global_flag", flag_name(r.global_flag)},
              {"computed_min", quad(r.computed_min)},
              {"computed_min_source", r.computed_min_source},
              {"p1_limit_below_lambda", r.p1_below_lambda},
              {"min_equals_lambda_flag", flag_name(r.min_flag)}};
}

}  // namespace wbdelta::json

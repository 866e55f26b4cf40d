#pragma once

// Command implementations behind the wbdelta executable. Each command returns
// its output text and exit code instead of writing to stdout.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wbdelta/azflag.hpp"
#include "wbdelta/hjchain.hpp"
#include "wbdelta/serialize.hpp"
#include "wbdelta/svalues.hpp"
#include "wbdelta/zariski.hpp"

namespace wbdelta::cli {

using json::Json;

enum class Format { text, json, csv };

enum Exit : int { kOk = 0, kInvariantFailure = 1, kUsage = 2 };

struct Options {
  std::optional<std::int64_t> a;
  std::optional<std::int64_t> b;
  std::optional<std::string> grid;
  std::optional<std::int64_t> max;
  Format format = Format::text;
  std::string convention = "both";
  bool minimize = false;
  bool timing = false;
  std::size_t samples = 20;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

struct CommandResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::pair<std::int64_t, std::int64_t> require_pair(const Options& o, const char* command) {
  if (!o.a || !o.b) throw UsageError(std::string(command) + " needs --a and --b");
  if (*o.a < 1 || *o.b < 1) throw UsageError("weights must be integers >= 1");
  return {*o.a, *o.b};
}

inline std::vector<MassConvention> conventions(const std::string& name) {
  if (name == "concentrated") return {MassConvention::concentrated};
  if (name == "split" || name == "equal-split") return {MassConvention::equal_split};
  if (name == "both") return {MassConvention::concentrated, MassConvention::equal_split};
  throw UsageError("--convention must be concentrated, split or both");
}

inline Json envelope(const std::string& command, Json parameters, Json results, Json flags, bool ok) {
  return Json{{"command", command}, {"parameters", std::move(parameters)}, {"ok", ok},
              {"flags", std::move(flags)}, {"results", std::move(results)}};
}

inline void render_text(std::ostream& os, const Json& j, const std::string& path) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(os, v, path.empty() ? k : path + "." + k);
  } else if (j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
    os << path << " = [";
    for (std::size_t k = 0; k < j.size(); ++k) os << (k ? ", " : "") << (j[k].is_string() ? j[k].get<std::string>() : j[k].dump());
    os << "]\n";
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) render_text(os, j[k], path + "[" + std::to_string(k) + "]");
  } else {
    os << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << csv_field(r[k]);
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

inline CommandResult finish(const Json& env, const Options& o, int exit_code) {
  CommandResult r;
  r.exit_code = exit_code;
  if (o.format == Format::json) {
    r.out = env.dump(2) + "\n";
  } else {
    std::ostringstream os;
    render_text(os, env, "");
    r.out = os.str();
  }
  return r;
}

inline void no_csv(const Options& o, const char* command) {
  if (o.format == Format::csv) throw UsageError(std::string("--csv is not available for ") + command);
}

/// "lo:hi:n" with rational endpoints.
inline std::tuple<Rational, Rational, std::size_t> parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw UsageError("--grid expects lo:hi:n");
  try {
    const Rational lo = parse_rational(spec.substr(0, c1));
    const Rational hi = parse_rational(spec.substr(c1 + 1, c2 - c1 - 1));
    const std::string n_text = spec.substr(c2 + 1);
    std::size_t used = 0;
    const long n = std::stol(n_text, &used);
    if (used != n_text.size() || n < 2) throw UsageError("grid size must be an integer >= 2");
    if (!(lo > 0) || !(lo < hi)) throw UsageError("grid needs 0 < lo < hi");
    return {lo, hi, static_cast<std::size_t>(n)};
  } catch (const Error&) {
    throw UsageError("--grid expects lo:hi:n with rational lo, hi");
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects lo:hi:n with an integer n");
  }
}

/// [2/3, 2/sqrt 3], where mu = a/b ranges over the chamber.
inline std::pair<QuadExt, QuadExt> chamber_interval() {
  return {QuadExt(make_rational(2, 3)), QuadExt(0, make_rational(2, 3), 3)};
}

}  // namespace detail

inline CommandResult cmd_resolve(const Options& o) {
  detail::no_csv(o, "resolve");
  const auto [a, b] = detail::require_pair(o, "resolve");
  const auto profile = cf_profile(a, b);
  const auto res = resolve(a, b);
  const auto lem = verify_selfint_lemmas(a, b);
  const auto shape = reconcile_chain_shape(a, b);
  const auto plan = contraction_plan(a, b);
  const auto trace = multiplicity_trace(a, b);
  const bool mult_ok = trace.e == 2 * b;
  const bool ok = lem.ok() && shape.ok && plan.ok() && mult_ok;

  Json results{{"profile", json::profile(profile)},
               {"resolution", json::resolution(res)},
               {"lemmas", json::lemmas(lem)},
               {"chain_shape", json::chain_shape(shape)},
               {"contraction", json::contraction(plan)},
               {"multiplicity_of_D", Json{{"e", json::exact(trace.e)},
                                          {"e_seq", json::exact_list(trace.e_seq)},
                                          {"f_seq", json::exact_list(trace.f_seq)},
                                          {"equals_2b", mult_ok}}}};
  Json flags = Json::array();
  if (plan.plan_mismatch) flags.push_back("PLAN-MISMATCH");
  return detail::finish(detail::envelope("resolve", Json{{"a", a}, {"b", b}}, results, flags, ok), o,
                        ok ? kOk : kInvariantFailure);
}

inline CommandResult cmd_zariski(const Options& o) {
  const auto [a, b] = detail::require_pair(o, "zariski");
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  const SurfaceConfig config = build_wbu_config(a, b);
  const auto z = decompose_family(config, a, b);
  const auto cv = cross_validate(config, a, b, o.samples);
  const auto violations = check_decomposition(config, z);
  const auto vol = z.volume(config);
  const bool ok = cv.ok() && violations.empty();

  if (o.format == Format::csv) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < z.regions.size(); ++k) {
      const auto& r = z.regions[k];
      std::string support;
      for (const auto& s : r.support) support += (support.empty() ? "" : " ") + s;
      rows.push_back({to_string(r.lo), to_string(r.hi), support,
                      r.negative.coefficient(curve::L).to_string(), r.negative.coefficient(curve::D).to_string(),
                      vol.pieces()[k].to_string()});
    }
    return {ok ? kOk : kInvariantFailure,
            detail::csv({"lo", "hi", "support", "n_L", "n_D", "vol"}, rows), ""};
  }
  Json results{{"config", json::config(config)},
               {"decomposition", json::zariski(z)},
               {"volume", json::piecewise(vol)},
               {"cross_validation", json::cross_validation(cv)},
               {"violations", violations}};
  return detail::finish(detail::envelope("zariski", Json{{"a", a}, {"b", b}, {"samples", o.samples}}, results,
                                         Json::array(), ok),
                        o, ok ? kOk : kInvariantFailure);
}

inline CommandResult cmd_delta(const Options& o) {
  const auto [lo, hi] = detail::chamber_interval();
  if (o.grid) {
    if (o.a || o.b) throw UsageError("--grid and --a/--b are exclusive");
    const auto [glo, ghi, n] = detail::parse_grid(*o.grid);
    const auto rows = ratio_grid(glo, ghi, n);
    std::size_t argmin = 0;
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (rows[k].f < rows[argmin].f) argmin = k;
    const auto m = minimize_ratio(lo, hi);
    if (o.format == Format::csv) {
      std::vector<std::vector<std::string>> out;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        out.push_back({to_string(rows[k].mu), to_string(rows[k].f), decimal_shadow(to_double(rows[k].f)),
                       k == argmin ? "1" : "0"});
      }
      return {kOk, detail::csv({"mu", "f", "f_decimal_nonauthoritative", "grid_min"}, out), ""};
    }
    Json jrows = Json::array();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      jrows.push_back(Json{{"mu", json::exact(rows[k].mu)}, {"f", json::with_shadow(rows[k].f)}, {"grid_min", k == argmin}});
    }
    Json results{{"rows", jrows}, {"grid_min_index", argmin}, {"interval_minimum", json::ratio_minimum(m)}};
    return detail::finish(detail::envelope("delta", Json{{"grid", *o.grid}}, results, Json::array(), true), o, kOk);
  }
  detail::no_csv(o, "delta without --grid");
  if (o.minimize || (!o.a && !o.b)) {
    const auto m = minimize_ratio(lo, hi);
    Json results{{"interval", Json{json::quad(lo), json::quad(hi)}}, {"minimum", json::ratio_minimum(m)}};
    return detail::finish(detail::envelope("delta", Json{{"minimize", true}}, results, Json::array(), true), o, kOk);
  }
  const auto [a, b] = detail::require_pair(o, "delta");
  const auto s = s_value_E_detailed(a, b);
  const bool ok = s.via_restricted == s.via_volume && s.via_volume == s.closed_form;
  const Rational A = log_discrepancy_E(a, b);
  const Rational mu = make_rational(a, b);
  Json results{{"mu", json::exact(mu)},
               {"S", json::with_shadow(s.via_volume)},
               {"S_via_restricted", json::exact(s.via_restricted)},
               {"S_closed_form", json::exact(s.closed_form)},
               {"A", json::exact(A)},
               {"A_over_S", json::with_shadow(A / s.via_volume)},
               {"f_mu", json::exact(ratio_f(mu))}};
  return detail::finish(detail::envelope("delta", Json{{"a", a}, {"b", b}}, results, Json::array(), ok), o,
                        ok ? kOk : kInvariantFailure);
}

inline CommandResult cmd_svalues(const Options& o) {
  const std::int64_t a = o.a.value_or(1), b = o.b.value_or(1);
  if (a < 1 || b < 1) throw UsageError("weights must be integers >= 1");
  const auto convs = detail::conventions(o.convention);
  const Rational ra(static_cast<long>(a)), rb(static_cast<long>(b));
  bool ok = true;
  Json points = Json::array();
  std::vector<std::vector<std::string>> rows;
  Json flags = Json::array();
  for (auto conv : convs) {
    for (auto id : all_points()) {
      const auto point = flag_point(a, b, id, conv);
      const auto h = h_function(a, b, point);
      const Rational s = s_value_point(a, b, point);
      const Rational displayed = displayed_point_formula(id).evaluate(ra, rb);
      const Rational fitted = oracle_point_formula(id, conv).evaluate(ra, rb);
      ok = ok && s > 0 && s == fitted;
      const std::string flag = flag_name(s == displayed ? Flag::match : Flag::formula_mismatch);
      if (s != displayed) flags.push_back(point_name(id) + "/" + convention_name(conv) + ": FORMULA-MISMATCH");
      rows.push_back({point_name(id), convention_name(conv), to_string(point.different_coeff), to_string(s),
                      to_string(displayed), flag, decimal_shadow(to_double(s))});
      Json masses = Json::object();
      for (const auto& [name, m] : point.local_masses) masses[name] = json::exact(m);
      points.push_back(Json{{"point", point_name(id)},
                            {"convention", convention_name(conv)},
                            {"different_coeff", json::exact(point.different_coeff)},
                            {"local_masses", masses},
                            {"h", json::piecewise(h)},
                            {"S", json::with_shadow(s)},
                            {"closed_form_S", json::exact(displayed)},
                            {"flag", flag}});
    }
  }
  if (o.format == Format::csv) {
    return {ok ? kOk : kInvariantFailure,
            detail::csv({"point", "convention", "different", "S", "closed_form_S", "flag", "S_decimal_nonauthoritative"},
                        rows),
            ""};
  }
  return detail::finish(detail::envelope("svalues", Json{{"a", a}, {"b", b}, {"convention", o.convention}},
                                         Json{{"points", points}}, flags, ok),
                        o, ok ? kOk : kInvariantFailure);
}

// ---- verify ----

struct PairOutcome {
  Weights w;
  std::vector<std::pair<std::string, std::string>> failures;  ///< (check, detail)
  std::vector<std::string> mismatches;                        ///< "P2/equal-split"
};

inline const std::vector<std::string>& verify_checks() {
  static const std::vector<std::string> names{"s-value",       "volume-profile", "zariski-cross-validation",
                                              "zariski-certificate", "resolution-lemmas", "chain-shape",
                                              "contraction",   "multiplicity",   "refined-s"};
  return names;
}

inline PairOutcome verify_pair(const Weights& w) {
  PairOutcome out{w, {}, {}};
  const auto a = w.a, b = w.b;
  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    try {
      const std::string why = body();
      if (!why.empty()) out.failures.emplace_back(name, why);
    } catch (const std::exception& e) {
      out.failures.emplace_back(name, e.what());
    }
  };
  check("s-value", [&] {
    const auto s = s_value_E_detailed(a, b);
    if (s.via_restricted != s.via_volume) return std::string("integral forms disagree");
    if (s.via_volume != s.closed_form) return "S = " + to_string(s.via_volume) + " vs " + to_string(s.closed_form);
    return std::string();
  });
  check("volume-profile", [&] {
    volume_profile(a, b);
    return std::string();
  });
  const SurfaceConfig config = build_wbu_config(a, b);
  check("zariski-cross-validation", [&] {
    const auto cv = cross_validate(config, a, b, 3);
    if (!cv.regions_match) return std::string("generic family differs from the closed form");
    return cv.mismatches.empty() ? std::string() : cv.mismatches.front().what;
  });
  check("zariski-certificate", [&] {
    const auto bad = check_decomposition(config, decompose_family(config, a, b));
    return bad.empty() ? std::string() : bad.front();
  });
  check("resolution-lemmas", [&] { return verify_selfint_lemmas(a, b).ok() ? "" : std::string("lemma identity fails"); });
  check("chain-shape", [&] { return reconcile_chain_shape(a, b).ok ? "" : std::string("i0/j0 disagree"); });
  check("contraction", [&] {
    const auto p = contraction_plan(a, b);
    return p.ok() ? std::string() : "plan fails: " + p.mismatch_detail;
  });
  check("multiplicity", [&] {
    const Rational e = multiplicity_of_D(a, b);
    return e == 2 * b ? std::string() : "e = " + to_string(e);
  });
  check("refined-s", [&] {
    const Rational ra(static_cast<long>(a)), rb(static_cast<long>(b));
    for (auto conv : {MassConvention::concentrated, MassConvention::equal_split}) {
      for (auto id : all_points()) {
        const Rational s = s_value_point(a, b, flag_point(a, b, id, conv));
        const std::string label = point_name(id) + "/" + convention_name(conv);
        if (!(s > 0)) return label + " is not positive";
        if (s != oracle_point_formula(id, conv).evaluate(ra, rb)) return label + " differs from its closed form";
        if (s != displayed_point_formula(id).evaluate(ra, rb)) out.mismatches.push_back(label);
      }
    }
    return std::string();
  });
  return out;
}

/// Runs verify_pair over `pairs` on a worker pool; results keep the input order.
inline std::vector<PairOutcome> verify_pairs(const std::vector<Weights>& pairs, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, pairs.size())));
  std::vector<PairOutcome> out(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) out[k] = verify_pair(pairs[k]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

inline CommandResult cmd_verify(const Options& o) {
  if (!o.max) throw UsageError("verify needs --max N");
  if (*o.max < 2) throw UsageError("--max must be >= 2");
  const auto pairs = chamber_pairs(*o.max);
  const auto outcomes = verify_pairs(pairs, o.threads);

  std::map<std::string, std::size_t> failed;
  std::map<std::string, std::vector<Weights>> mismatch_pairs;
  Json failures = Json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : outcomes) {
    for (const auto& [check, why] : r.failures) {
      ++failed[check];
      failures.push_back(Json{{"a", r.w.a}, {"b", r.w.b}, {"check", check}, {"detail", why}});
    }
    for (const auto& m : r.mismatches) mismatch_pairs[m].push_back(r.w);
    rows.push_back({std::to_string(r.w.a), std::to_string(r.w.b), r.failures.empty() ? "pass" : "fail",
                    std::to_string(r.failures.size()), std::to_string(r.mismatches.size())});
  }
  const bool ok = failures.empty();
  if (o.format == Format::csv) {
    return {ok ? kOk : kInvariantFailure, detail::csv({"a", "b", "status", "failures", "formula_mismatches"}, rows), ""};
  }
  Json checks = Json::array();
  for (const auto& name : verify_checks()) {
    const std::size_t f = failed.count(name) ? failed.at(name) : 0;
    checks.push_back(Json{{"check", name}, {"passed", pairs.size() - f}, {"failed", f}});
  }
  Json diagnostics = Json::array();
  Json flags = Json::array();
  for (const auto& [label, ws] : mismatch_pairs) {
    diagnostics.push_back(Json{{"point", label},
                               {"flag", "FORMULA-MISMATCH"},
                               {"pairs", ws.size()},
                               {"first", Json{ws.front().a, ws.front().b}}});
    flags.push_back(label + ": FORMULA-MISMATCH");
  }
  Json results{{"pairs", pairs.size()}, {"checks", checks}, {"failures", failures}, {"diagnostics", diagnostics}};
  return detail::finish(detail::envelope("verify", Json{{"max", *o.max}}, results, flags, ok), o,
                        ok ? kOk : kInvariantFailure);
}

inline CommandResult cmd_report(const Options& o) {
  detail::no_csv(o, "report");
  const auto convs = detail::conventions(o.convention);
  const auto rep = theorem_report(critical_direction(), convs);
  const auto [lo, hi] = detail::chamber_interval();
  const auto m = minimize_ratio(lo, hi);
  bool ok = m.min == rep.lambda && rep.global_flag == Flag::match;
  for (const auto& p : rep.points) ok = ok && p.oracle_form_verified;

  Json flags = Json::array();
  flags.push_back("A/S limit: " + flag_name(rep.global_flag));
  for (const auto& p : rep.points) {
    const std::string label = point_name(p.id) + "/" + convention_name(p.convention);
    flags.push_back(label + " closed form: " + flag_name(p.formula_flag));
    flags.push_back(label + " limit: " + flag_name(p.limit_flag));
  }
  flags.push_back("min = lambda: " + flag_name(rep.min_flag));

  const QuadExt p1 = displayed_limit(PointId::P1);
  Json comparison{{"left", json::quad(p1)},
                  {"right", json::quad(rep.lambda)},
                  {"relation", p1 < rep.lambda ? "<" : p1 == rep.lambda ? "=" : ">"},
                  {"flag", flag_name(rep.min_flag)}};
  const auto table = reference_table();
  const auto& bracket = table[5];
  Json results{{"lambda", json::quad(rep.lambda)},
               {"ratio_minimum", json::ratio_minimum(m)},
               {"theorem", json::svalue_report(rep)},
               {"p1_vs_lambda", comparison},
               {"lambda_in_case6_bracket", QuadExt(bracket.lo) < rep.lambda && rep.lambda < QuadExt(bracket.hi)},
               {"reference_table", json::reference(table)}};
  return detail::finish(detail::envelope("report", Json{{"convention", o.convention}}, results, flags, ok), o,
                        ok ? kOk : kInvariantFailure);
}

using Command = std::function<CommandResult(const Options&)>;

inline const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{{"resolve", cmd_resolve}, {"zariski", cmd_zariski},
                                                   {"delta", cmd_delta},     {"svalues", cmd_svalues},
                                                   {"verify", cmd_verify},   {"report", cmd_report}};
  return table;
}

/// Runs one command, mapping errors to exit codes; adds "timing" when requested.
inline CommandResult run_command(const std::string& name, const Options& o) {
  const auto it = commands().find(name);
  if (it == commands().end()) return {kUsage, "", "unknown command " + name + "\n"};
  const auto start = std::chrono::steady_clock::now();
  CommandResult r;
  try {
    r = it->second(o);
  } catch (const UsageError& e) {
    return {kUsage, "", std::string("usage error: ") + e.what() + "\n"};
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::invalid_weights:
      case Errc::chamber_violation:
      case Errc::parse:
      case Errc::domain:
      case Errc::out_of_range:
        return {kUsage, "", std::string("error: ") + e.what() + "\n"};
      default:
        return {kInvariantFailure, "", std::string("invariant failure: ") + e.what() + "\n"};
    }
  }
  if (o.timing) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.format == Format::json) {
      Json env = Json::parse(r.out);
      env["timing"] = Json{{"elapsed_ms", decimal_shadow(ms)}};
      r.out = env.dump(2) + "\n";
    } else {
      r.err += "elapsed_ms = " + decimal_shadow(ms) + "\n";
    }
  }
  return r;
}

}  // namespace wbdelta::cli

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace wbdelta::cli;
  CLI::App app{"Exact audit of the delta invariant of weighted blowups on a degree-2 del Pezzo surface"};
  app.require_subcommand(1);
  Options opts;
  bool as_json = false, as_csv = false;

  auto add_format = [&](CLI::App* sub) {
    auto* j = sub->add_flag("--json", as_json, "JSON envelope");
    sub->add_flag("--csv", as_csv, "CSV table")->excludes(j);
    sub->add_flag("--timing", opts.timing, "report elapsed time");
  };
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("--a", opts.a, "weight a");
    sub->add_option("--b", opts.b, "weight b");
  };

  auto* resolve = app.add_subcommand("resolve", "Hirzebruch-Jung chains, lemmas and contraction plan");
  add_pair(resolve);
  add_format(resolve);
  auto* zariski = app.add_subcommand("zariski", "Zariski decomposition of -K - tE");
  add_pair(zariski);
  zariski->add_option("--samples", opts.samples, "sample points per region for cross-validation");
  add_format(zariski);
  auto* delta = app.add_subcommand("delta", "S(-K;E), A/S, ratio grids and the exact minimum");
  add_pair(delta);
  delta->add_option("--grid", opts.grid, "mu grid lo:hi:n");
  delta->add_flag("--minimize", opts.minimize, "exact minimum over the chamber");
  add_format(delta);
  auto* svalues = app.add_subcommand("svalues", "refined S-values at the points of E");
  add_pair(svalues);
  svalues->add_option("--convention", opts.convention, "concentrated|split|both")->check(
      CLI::IsMember({"concentrated", "split", "both"}));
  add_format(svalues);
  auto* verify = app.add_subcommand("verify", "invariant suite over all chamber pairs");
  verify->add_option("--max", opts.max, "largest a")->required();
  verify->add_option("--threads", opts.threads, "worker threads (0: all cores)");
  add_format(verify);
  auto* report = app.add_subcommand("report", "full report with limits, flags and reference table");
  report->add_option("--convention", opts.convention, "concentrated|split|both")->check(
      CLI::IsMember({"concentrated", "split", "both"}));
  add_format(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  opts.format = as_json ? Format::json : as_csv ? Format::csv : Format::text;
  const CommandResult r = run_command(app.get_subcommands().front()->get_name(), opts);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

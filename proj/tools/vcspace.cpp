#include <CLI11.hpp>

#include <iostream>

#include "vcspace/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Truncated models of E_VC for crystallographic groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
      "Exit codes:\n"
      "  0  success\n"
      "  1  UnknownGroup\n"
      "  2  NotPrimitive\n"
      "  3  ConjugateClasses\n"
      "  4  ClassOutsideBound\n"
      "  5  NotAdmissible\n"
      "  6  InvalidInput (parse errors, dimension mismatches, invalid generators, missing fillings)");

  vcspace::RunConfig config;
  auto common = [&](CLI::App* sub, bool group, bool classes) {
    if (group) sub->add_option("--group", config.group, "catalog group name (p1, p2, pg, pm, p4, P1)");
    sub->add_option("--bound", config.bound, "truncation bound on the sup norm of class vectors");
    if (classes) sub->add_option("--classes", config.classes, "class vectors such as 1,0 0,1");
    sub->add_option("--out", config.out, "write the report to this file");
    sub->add_flag("--pretty", config.pretty, "indent the JSON report");
  };

  auto* catalog = app.add_subcommand("catalog", "list catalog groups");
  catalog->add_option("--group", config.group, "show only this group");
  catalog->add_option("--out", config.out, "write the report to this file");
  catalog->add_flag("--pretty", config.pretty, "indent the JSON report");
  common(app.add_subcommand("cyclics", "enumerate maximal cyclic classes"), true, true);
  auto* build = app.add_subcommand("build", "assemble the model");
  common(build, true, true);
  build->add_flag("--with-base", config.withBase, "include every cell of the refined torus");
  common(app.add_subcommand("homology", "homology of the model and its quotient"), true, true);
  common(app.add_subcommand("verify", "certificate for a pair of classes"), true, true);
  common(app.add_subcommand("validate-cylinder", "check each mapping cylinder"), true, true);
  auto* fixed = app.add_subcommand("fixed-set", "fixed sets of a subgroup");
  common(fixed, true, false);
  fixed->add_option("--subgroup", config.subgroup, "subgroup JSON file")->required();

  app.add_flag("-v,--verbose", config.verbose, "print timings to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 6;
  }
  config.command = app.get_subcommands().front()->get_name();
  return vcspace::run(config, std::cout, std::cerr);
}

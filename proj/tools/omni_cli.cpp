#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "omni/report.hpp"
#include "omni/runner.hpp"

using namespace omni;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Globals {
  OracleOverrides overrides;
  std::string format = "text";
  bool timing = false;
};

struct Request {
  std::string verb;
  std::string file;
  std::vector<std::string> structures;
  std::vector<std::pair<std::string, std::string>> args;
  std::string only;
};

// Structures named on the command line, or every structure in the document.
std::vector<std::string> targets(const Document& doc, const std::vector<std::string>& named) {
  if (!named.empty()) return named;
  std::vector<std::string> out;
  for (const auto& s : doc.structures) out.push_back(s.label);
  return out;
}

Document selftest_document() {
  Document doc;
  doc.source = "<selftest>";
  doc.chart = make_chart({"x"});
  return doc;
}

int execute(const Globals& g, const Request& req) {
  Document doc;
  std::string where = req.file;
  try {
    doc = req.verb == "selftest" ? selftest_document() : load_document(req.file);
    if (req.verb == "selftest") {
      doc.checks.push_back(synthetic_check("identity_suite", "", req.args));
    } else if (req.verb != "check") {
      std::vector<CheckDef> checks;
      for (const auto& t : targets(doc, req.structures)) {
        if (!doc.find(t)) throw SemanticError("unknown structure label '" + t + "'", 0, 0);
        checks.push_back(synthetic_check(req.verb, t, req.args));
      }
      doc.checks = std::move(checks);
    } else if (!req.only.empty()) {
      bool found = false;
      for (const auto& c : doc.checks) found = found || c.label == req.only;
      if (!found) throw SemanticError("no check labelled '" + req.only + "'", 0, 0);
    }
    where = "<command line>";
    for (const auto& c : doc.checks) validate_check(doc, c);
  } catch (const ParseError& e) {
    std::cerr << where << ":" << e.line() << ":" << e.column() << ": parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SemanticError& e) {
    std::cerr << where << ":" << e.line() << ":" << e.column() << ": error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << where << ": error: " << e.what() << "\n";
    return kExitInput;
  }
  Oracle o = g.overrides.apply(doc.oracle);
  RunReport rep = run_document(doc, o, req.only);
  EmitOptions opts{g.format == "json" ? ReportFormat::Json : ReportFormat::Text, g.timing};
  std::cout << emit_report(rep, opts);
  return rep.ok() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Omni-Lie algebroid calculus and Dirac-Jacobi structure verifier"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::uint64_t seed = 0;
  int samples = 0;
  double atol = 0, rtol = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Oracle seed")->check(CLI::NonNegativeNumber);
  auto* samples_opt = app.add_option("--samples", samples, "Oracle sample count")->check(CLI::PositiveNumber);
  auto* atol_opt = app.add_option("--atol", atol, "Absolute tolerance")->check(CLI::PositiveNumber);
  auto* rtol_opt = app.add_option("--rtol", rtol, "Relative tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", g.timing, "Include per-check timing in JSON reports");

  Request req;
  std::string point, slice, e, gs, expect, dims, trials, radius, grid, s_value;
  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", req.file, "Document")->required()->check(CLI::ExistingFile); };
  auto structure_arg = [&](CLI::App* sub) {
    sub->add_option("--structure", req.structures, "Structure label (default: every structure)");
  };

  auto* check = app.add_subcommand("check", "Run every check block of a document");
  file_arg(check);
  check->add_option("--only", req.only, "Run a single check by label");

  auto* analyze = app.add_subcommand("analyze", "Pointwise invariants at given points");
  file_arg(analyze);
  structure_arg(analyze);
  analyze->add_option("--point", point, "Points \"x=...,y=...\" separated by ';'");
  analyze->add_option("--grid", grid, "Grid points per axis when no point is given");

  auto* pullback = app.add_subcommand("pullback", "Backward image along a coordinate slice");
  file_arg(pullback);
  structure_arg(pullback);
  pullback->add_option("--slice", slice, "Slice \"y=0\"")->required();
  pullback->add_option("--expect", expect, "Label of the expected frame on the slice");

  auto* diracize = app.add_subcommand("diracize", "Dirac structure on the slit dual bundle");
  file_arg(diracize);
  structure_arg(diracize);
  diracize->add_option("--point", point, "Points for the characteristic dimension check");
  diracize->add_option("--s", s_value, "Fiber coordinate for the dimension check");

  auto* spencer = app.add_subcommand("spencer", "Spencer operator axioms");
  file_arg(spencer);
  structure_arg(spencer);
  spencer->add_option("--trials", trials, "Random section pairs");

  auto* thicken = app.add_subcommand("thicken", "Jacobi thickening");
  file_arg(thicken);
  structure_arg(thicken);
  thicken->add_option("--e", e, "Derivations spanning L cap DL, ';'-separated");
  thicken->add_option("--g", gs, "Complementary derivations, ';'-separated");
  thicken->add_option("--radius", radius, "Fiber sampling radius");

  auto* selftest = app.add_subcommand("selftest", "Randomized identity suites");
  selftest->add_option("--dims", dims, "Comma-separated dimensions");
  selftest->add_option("--trials", trials, "Trials per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitInput;
  }

  if (*seed_opt) g.overrides.seed = seed;
  if (*samples_opt) g.overrides.samples = samples;
  if (*atol_opt) g.overrides.atol = atol;
  if (*rtol_opt) g.overrides.rtol = rtol;

  auto add = [&](const char* key, const std::string& v) {
    if (!v.empty()) req.args.emplace_back(key, v);
  };
  CLI::App* sub = app.get_subcommands().front();
  req.verb = sub->get_name();
  if (req.verb == "analyze") {
    add("points", point);
    add("grid", grid);
  } else if (req.verb == "pullback") {
    add("slice", slice);
    add("expect_frame", expect);
  } else if (req.verb == "diracize") {
    add("points", point);
    add("s", s_value);
  } else if (req.verb == "spencer") {
    add("trials", trials);
  } else if (req.verb == "thicken") {
    add("e", e);
    add("g", gs);
    add("radius", radius);
  } else if (req.verb == "selftest") {
    add("dims", dims);
    add("trials", trials);
  }
  return execute(g, req);
}

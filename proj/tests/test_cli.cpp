#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "omni/report.hpp"

using namespace omni;
using nlohmann::json;

namespace {

std::string env(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

std::string example(const std::string& file) { return env("OMNI_EXAMPLES") + "/" + file; }

struct Run {
  int code;
  std::string out;
};

// Runs the command line tool; stderr is discarded.
Run cli(const std::string& args) {
  std::string cmd = "\"" + env("OMNI_CLI") + "\" " + args + " 2>/dev/null";
  Run r{-1, ""};
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

const char* kWorked = R"(chart { names = "x, y" }
structure J { type = "jacobi"; lambda = "x"; gamma = "0, 1" }
check ok { verb = "check"; target = "J" }
)";

}  // namespace

TEST_CASE("example documents load") {
  REQUIRE_FALSE(env("OMNI_EXAMPLES").empty());
  std::size_t count = 0;
  for (const auto& e : std::filesystem::directory_iterator(env("OMNI_EXAMPLES"))) {
    if (e.path().extension() != ".omni") continue;
    ++count;
    Document d = load_document(e.path().string());
    CHECK(d.chart);
    CHECK_FALSE(d.checks.empty());
  }
  CHECK(count >= 5);
}

TEST_CASE("document contents") {
  Document d = parse_document(kWorked);
  CHECK(d.chart->names() == std::vector<std::string>{"x", "y"});
  REQUIRE(d.structures.size() == 1);
  CHECK(d.structures[0].frame.rank() == 3);
  REQUIRE(d.checks.size() == 1);
  CHECK(d.checks[0].verb == "check");
  CHECK(d.checks[0].expect_pass);

  Document w = load_document(example("worked_jacobi.omni"));
  CHECK(w.oracle.seed == 7);
  CHECK(w.oracle.samples == 24);
  const StructureDef* S = w.find("S");
  REQUIRE(S);
  CHECK(S->frame.chart->names() == std::vector<std::string>{"x"});

  Document dom = parse_document(R"(chart { names = "x"; domain.x = "[-2, -1/2] u [0.5, 2]" }
oracle { atol = 1e-10; rtol = 0 })");
  REQUIRE(dom.chart->domain(0).parts.size() == 2);
  CHECK(dom.chart->domain(0).parts[0].hi == doctest::Approx(-0.5));
  CHECK(dom.oracle.atol == doctest::Approx(1e-10));
}

TEST_CASE("semantic errors") {
  auto semantic_at = [](const std::string& text, std::size_t line) {
    try {
      parse_document(text);
    } catch (const SemanticError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() > 0);
      return true;
    }
    return false;
  };
  CHECK(semantic_at("chart { names = \"x\" }\nstructure a { type = \"foo\" }", 2));
  CHECK(semantic_at("chart { names = \"x, y\" }\nstructure a { type = \"jacobi\"; gamma = \"1\" }", 2));
  CHECK(semantic_at("chart { names = \"x\" }\ncheck c { verb = \"check\"; target = \"nope\" }", 2));
  CHECK(semantic_at("chart { names = \"x\" }\nstructure u { type = \"unit\" }\ncheck c { verb = \"frobnicate\"; target = \"u\" }", 3));
  CHECK(semantic_at("chart { names = \"x\" }\nstructure u { type = \"unit\"; colour = \"red\" }", 2));
  CHECK(semantic_at("chart { names = \"x\" }\nstructure u { type = \"unit\" }\nstructure u { type = \"unit\" }", 3));
  CHECK(semantic_at("chart { names = \"x\" }\nstructure u { type = \"unit\" }\n"
                    "check c { verb = \"analyze\"; target = \"u\"; points = \"y=1\" }",
                    3));
  CHECK(semantic_at("chart { names = \"x\" }\noracle { seed = x }", 2));
  CHECK_THROWS_AS(parse_document("oracle { seed = 1 }"), SemanticError);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_document("chart { names = \"x, y\" }\nstructure a {\n  type = \"jacobi\"\n  gamma = \"x+, 1\"\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 14);  // end of "x+"
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(parse_document("chart { names = \"x\" "), ParseError);
  CHECK_THROWS_AS(parse_document("chart { names = \"x }"), ParseError);
  CHECK_THROWS_AS(parse_document("chart { names \"x\" }"), ParseError);
  CHECK_THROWS_AS(parse_document("chart { names = \"x\" } @"), ParseError);
}

TEST_CASE("empty report in both formats") {
  RunReport r;
  std::string text = emit_report(r, {ReportFormat::Text, false});
  CHECK(text.find("0/0 checks passed") != std::string::npos);
  json j = json::parse(emit_report(r, {ReportFormat::Json, false}));
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["checks"].empty());
  CHECK(j["summary"]["ok"] == true);
}

TEST_CASE("json emitter") {
  json j{{"b", 0.1}, {"a", 1.0}, {"c", std::nan("")}, {"d", 3}};
  std::string s = dump_json(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"a\": 1.0") != std::string::npos);
  CHECK(s.find("\"c\": null") != std::string::npos);
  CHECK(s.find("\"d\": 3") != std::string::npos);
  CHECK(s.find("\"a\"") < s.find("\"b\""));
}

TEST_CASE("failing witness carries coordinates") {
  Document d = load_document(example("negative_control.omni"));
  Oracle o = d.oracle;
  RunReport r = run_document(d, o, "open_not_dirac");
  REQUIRE(r.results.size() == 1);
  CHECK_FALSE(r.results[0].holds);
  CHECK(r.results[0].pass);
  json j = report_to_json(r);
  const json& w = j["checks"][0]["witnesses"];
  REQUIRE_FALSE(w.empty());
  CHECK(w[0]["kind"].get<std::string>().find("Courant-Jacobi") != std::string::npos);
  CHECK(w[0]["coordinates"].contains("x"));
  CHECK(w[0]["coordinates"].contains("z"));
  CHECK(w[0]["point"].size() == 3);
}

TEST_CASE("runner records errors and continues") {
  Document d = parse_document(R"(chart { names = "x, y" }
structure f { type = "flat_connection" }
check off_domain { verb = "pushforward"; target = "f"; map = "y + 5"; target_chart = "y" }
check fine { verb = "check"; target = "f" }
)");
  RunReport r = run_document(d, d.oracle);
  REQUIRE(r.results.size() == 2);
  CHECK_FALSE(r.results[0].error.empty());
  CHECK_FALSE(r.results[0].pass);
  CHECK(r.results[1].pass);
  CHECK_FALSE(r.ok());
}

TEST_CASE("determinism and single-check reproduction") {
  Document d = load_document(example("worked_jacobi.omni"));
  Oracle o = d.oracle;
  std::string a = dump_json(report_to_json(run_document(d, o)));
  std::string b = dump_json(report_to_json(run_document(d, o)));
  CHECK(a == b);
  o.seed = 99;
  CHECK(dump_json(report_to_json(run_document(d, o))) != a);

  json full = json::parse(a);
  o.seed = d.oracle.seed;
  for (const auto& c : full["checks"]) {
    json single = report_to_json(run_document(d, o, c["label"].get<std::string>()));
    CHECK(single["checks"][0] == c);
  }
}

TEST_CASE("command line exit codes") {
  REQUIRE_FALSE(env("OMNI_CLI").empty());
  Run ok = cli("check \"" + example("worked_jacobi.omni") + "\"");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("checks passed") != std::string::npos);

  std::string failing = temp_file("omni_failing.omni", R"(chart { names = "x, y, z" }
structure open { type = "two_cocycle"; omega = "z, 0, 0, 0, 0, 0" }
check dirac { verb = "check"; target = "open" }
)");
  CHECK(cli("check \"" + failing + "\"").code == 1);

  std::string bad = temp_file("omni_bad.omni", "chart { names = \"x\" }\nstructure a { type = \"foo\" }\n");
  CHECK(cli("check \"" + bad + "\"").code == 2);
  CHECK(cli("check /nonexistent/file.omni").code == 2);
  CHECK(cli("--format yaml check \"" + example("worked_jacobi.omni") + "\"").code == 2);
  CHECK(cli("pullback \"" + example("worked_jacobi.omni") + "\" --structure J --slice \"w=0\"").code == 2);
}

TEST_CASE("command line verbs") {
  const std::string w = "\"" + example("worked_jacobi.omni") + "\"";
  Run a = cli("analyze " + w + " --structure J --point \"x=0, y=0.2\" --format json");
  REQUIRE(a.code == 0);
  json ja = json::parse(a.out);
  CHECK(ja["checks"][0]["details"]["points"][0]["tag"] == "precontact");

  Run p = cli("pullback " + w + " --structure J --slice \"y=0\" --expect S");
  CHECK(p.code == 0);
  CHECK(cli("diracize " + w + " --structure J").code == 0);
  CHECK(cli("spencer " + w + " --structure J --trials 1").code == 0);
  CHECK(cli("thicken " + w + " --structure S --e \"x, 1\" --g \"1, 0\"").code == 0);
  CHECK(cli("selftest --dims 1,2 --trials 4").code == 0);
  CHECK(cli("check " + w + " --only slice").code == 0);
  CHECK(cli("check " + w + " --only nonexistent").code == 2);

  Run j1 = cli("--seed 4 --format json check " + w);
  Run j2 = cli("--seed 4 --format json check " + w);
  CHECK(j1.code == 0);
  CHECK(j1.out == j2.out);
  CHECK(json::parse(j1.out)["oracle"]["seed"] == 4);
}

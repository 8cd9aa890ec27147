#include "omni/runner.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "omni/analysis.hpp"
#include "omni/diracization.hpp"
#include "omni/identity_suite.hpp"
#include "omni/spencer.hpp"

namespace omni {

using nlohmann::json;

namespace {

struct Context {
  const Document& doc;
  const CheckDef& check;
  const Oracle& o;
  CheckResult& r;

  const Block& block() const { return check.block; }
  const Value* arg(const std::string& k) const { return check.block.find(k); }
  const StructureFrame& target() const { return doc.find(check.target)->frame; }
  const Chart& chart() const { return *target().chart; }

  std::string text(const std::string& k, const std::string& fallback) const {
    const Value* v = arg(k);
    return v ? v->text : fallback;
  }
  double number(const std::string& k, double fallback) const {
    const Value* v = arg(k);
    if (!v) return fallback;
    return parse_constant(*v);
  }
  int integer(const std::string& k, int fallback) const {
    double x = number(k, fallback);
    if (x != static_cast<double>(static_cast<int>(x))) throw SemanticError("'" + k + "' must be an integer", arg(k)->line, arg(k)->column);
    return static_cast<int>(x);
  }
  std::vector<std::vector<double>> points(const std::string& k, std::size_t default_grid) const {
    if (const Value* v = arg(k)) return parse_points(*v, chart());
    if (const Value* g = arg("grid")) {
      (void)g;
      return grid_points(chart(), static_cast<std::size_t>(integer("grid", 5)));
    }
    return grid_points(chart(), default_grid);
  }

  void witnesses(const std::vector<Witness>& ws) { r.witnesses.insert(r.witnesses.end(), ws.begin(), ws.end()); }
};

json vec(const std::vector<double>& v) { return json(v); }

json verdict_json(const CheckVerdict& v) {
  json j{{"ok", v.ok}};
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

void merge(Context& c, const std::string& key, const CheckVerdict& v, bool& holds) {
  c.r.details[key] = verdict_json(v);
  c.witnesses(v.witnesses);
  holds = holds && v.ok;
}

std::vector<std::string> names_of(const Chart& c) { return c.names(); }

// ---- verbs ----

bool verb_check(Context& c) {
  const std::string prop = c.text("property", "dirac_jacobi");
  Classification k = classify_subbundle(c.target(), c.o);
  c.r.details["frame_ok"] = k.frame_ok;
  c.r.details["isotropic"] = k.isotropic;
  c.r.details["maximal"] = k.maximal;
  c.r.details["involutive"] = k.involutive;
  c.r.details["dirac_jacobi"] = k.dirac_jacobi;
  c.r.details["property"] = prop;
  // Witnesses belong to the report only when the requested property fails.
  auto result = [&](bool ok) {
    if (!ok) c.witnesses(k.witnesses);
    return ok;
  };
  if (prop == "dirac_jacobi") return result(k.dirac_jacobi);
  if (prop == "isotropic") return result(k.isotropic);
  if (prop == "involutive") return result(k.involutive);
  if (prop == "maximal") return result(k.maximal);
  if (prop == "frame") return result(k.frame_ok);
  if (prop == "characteristic") {
    Witness w;
    bool ok = characteristic_equalities(c.target(), c.o, &w);
    c.r.details["characteristic"] = ok;
    if (!ok) c.r.witnesses.push_back(w);
    return ok;
  }
  const Value* v = c.arg("property");
  throw SemanticError("unknown property '" + prop + "'", v->line, v->column);
}

std::string scalar_text(const Scalar& s, const Chart& chart) { return to_string(s, chart); }

bool verb_recognize(Context& c) {
  Recognition rec = recognize(c.target(), c.o);
  const Chart& chart = c.chart();
  const std::size_t n = chart.dim();
  c.r.details["tag"] = rec.tag();
  c.r.details["cocycle"] = rec.cocycle;
  c.r.details["jacobi"] = rec.jacobi;
  c.r.details["homogeneous_poisson"] = rec.homogeneous_poisson;
  if (rec.omega) {
    json w = json::object();
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        w[std::to_string(i) + "," + std::to_string(j)] =
            scalar_text(rec.omega->get({static_cast<int>(i), static_cast<int>(j)}), chart);
    c.r.details["omega"] = w;
  }
  if (rec.J) {
    json w = json::object();
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) w[std::to_string(i) + "," + std::to_string(j)] = scalar_text(rec.J->matrix()[i][j], chart);
    c.r.details["J"] = w;
  }
  if (rec.hp) {
    json pi = json::object(), z = json::array();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pi[std::to_string(i) + "," + std::to_string(j)] = scalar_text(rec.hp->pi[i][j], chart);
    for (std::size_t i = 0; i < n; ++i) z.push_back(scalar_text(rec.hp->Z[i], chart));
    c.r.details["pi"] = pi;
    c.r.details["Z"] = z;
  }
  json table = json::array();
  for (const auto& row : rec.table)
    table.push_back({{"point", vec(row.point)}, {"cap_jet", row.cap_jet}, {"cap_der", row.cap_der}, {"tau", row.tau}});
  c.r.details["rank_table"] = table;
  if (const Value* e = c.arg("expect")) {
    c.r.details["expect"] = e->text;
    // A structure may belong to several classes; the tag names only the first.
    if (e->text == "cocycle") return rec.cocycle;
    if (e->text == "jacobi") return rec.jacobi;
    if (e->text == "homogeneous_poisson") return rec.homogeneous_poisson;
    if (e->text == "unclassified") return rec.tag() == "unclassified";
    throw SemanticError("unknown class '" + e->text + "'", e->line, e->column);
  }
  return rec.tag() != "unclassified";
}

bool verb_analyze(Context& c) {
  const StructureFrame& F = c.target();
  auto pts = c.points("points", 5);
  bool holds = true;
  json reports = json::array();
  for (const auto& p : pts) {
    PointReport pr = point_report(F, p, c.o.atol);
    Normalization nf = normalize_frame_at_point(F, p, c.o.atol);
    json j{{"point", vec(p)},           {"tag", pr.tag()},           {"rank_I", pr.rank_I},
           {"rank_E", pr.rank_E},       {"rank_K", pr.rank_K},       {"rank_sigma_I", pr.rank_sigma_I},
           {"unit_in_L", pr.unit_in_L}, {"normal_form", nf.ok ? nf.case_tag : "failed: " + nf.message}};
    if (nf.ok) j["leaf_dim"] = nf.leaf_dim;
    reports.push_back(j);
    auto expect = [&](const char* key, const std::string& got) {
      if (const Value* v = c.arg(key); v && v->text != got) {
        holds = false;
        c.r.witnesses.push_back(Witness{std::string(key) + " differs: " + got, p, {}, 0.0});
      }
    };
    expect("expect_tag", pr.tag());
    expect("expect_rank_E", std::to_string(pr.rank_E));
    expect("expect_rank_K", std::to_string(pr.rank_K));
    expect("expect_rank_sigma_I", std::to_string(pr.rank_sigma_I));
  }
  c.r.details["points"] = reports;
  merge(c, "parity", parity_check(F, pts, c.o.atol), holds);
  merge(c, "dichotomy", dichotomy_check(F, pts, c.o.atol), holds);
  merge(c, "reconstruction", reconstruction_check(F, c.o), holds);
  return holds;
}

bool verb_admissible(Context& c) {
  const StructureFrame& F = c.target();
  const Value* fv = c.arg("f");
  if (!fv) throw SemanticError("admissible needs 'f'", c.block().line, c.block().column);
  Scalar f = parse_value_scalar(*fv, c.chart());
  const std::string kind = c.text("kind", "section");
  AdmissibilityVerdict v;
  if (kind == "section") {
    std::optional<Derivation> ham;
    if (const Value* h = c.arg("hamiltonian")) ham = derivation_from_components(parse_value_list(*h, c.chart(), F.dim() + 1));
    v = is_admissible_section(F, f, c.o, ham ? &*ham : nullptr);
  } else if (kind == "function") {
    v = is_admissible_function(F, f, c.o);
  } else {
    const Value* k = c.arg("kind");
    throw SemanticError("kind must be \"section\" or \"function\"", k->line, k->column);
  }
  c.r.details["kind"] = kind;
  c.r.details["membership"] = v.membership;
  c.r.details["null_test"] = v.null_test;
  c.r.details["agree"] = v.agree;
  if (v.hamiltonian_ok) c.r.details["hamiltonian_ok"] = *v.hamiltonian_ok;
  c.witnesses(v.witnesses);
  return v.admissible() && v.agree && v.hamiltonian_ok.value_or(true);
}

bool verb_pullback(Context& c) {
  const StructureFrame& F = c.target();
  const Value* sv = c.arg("slice");
  if (!sv) throw SemanticError("pullback needs 'slice'", c.block().line, c.block().column);
  CoordinateSlice slice = CoordinateSlice::parse(sv->text, c.chart());
  SliceImage img = backward_image_slice(F, slice, c.o);
  c.r.coordinates = names_of(c.chart());
  json clean = json::array();
  for (const auto& row : img.clean_table) clean.push_back({{"point", vec(row.point)}, {"rank", row.rank}});
  c.r.details["clean_table"] = clean;
  c.r.details["slice_chart"] = img.frame.chart->names();
  c.r.details["frame"] = describe_frame(img.frame);
  Classification k = classify_subbundle(img.frame, c.o);
  c.r.details["dirac_jacobi"] = k.dirac_jacobi;
  bool holds = k.dirac_jacobi;
  c.witnesses(k.witnesses);
  if (const Value* e = c.arg("expect_frame")) {
    const StructureDef* exp = c.doc.find(e->text);
    if (!exp) throw SemanticError("unknown structure label '" + e->text + "'", e->line, e->column);
    if (exp->frame.chart->names() != img.frame.chart->names())
      throw SemanticError("expected frame lives on a different chart", e->line, e->column);
    StructureFrame expected = exp->frame;
    expected.chart = img.frame.chart;  // same names; use the slice domains
    Witness w;
    bool same = same_structure(img.frame, expected, c.o, &w);
    c.r.details["matches_expected"] = same;
    if (!same) {
      w.kind = "slice image differs from " + e->text;
      c.r.witnesses.push_back(w);
      c.r.coordinates = img.frame.chart->names();
    }
    holds = holds && same;
  }
  return holds;
}

bool verb_pushforward(Context& c) {
  const StructureFrame& F = c.target();
  const Value* tv = c.arg("target_chart");
  const Value* mv = c.arg("map");
  if (!tv || !mv) throw SemanticError("pushforward needs 'map' and 'target_chart'", c.block().line, c.block().column);
  LineBundleMorphism m;
  m.source = F.chart;
  m.target = sub_chart(*c.doc.chart, *tv);
  m.base = parse_value_list(*mv, c.chart(), m.target->dim());
  if (const Value* cv = c.arg("c")) m.c = parse_value_scalar(*cv, c.chart());
  m.validate(c.o);
  auto pts = c.points("points", 3);
  bool holds = true;
  json images = json::array();
  for (const auto& p : pts) {
    ForwardImage img = forward_image_pointwise(m, F, p, c.o.atol);
    images.push_back({{"point", vec(p)},
                      {"rank", img.rank},
                      {"kernel_rank", img.kernel_rank},
                      {"maximal_isotropic", img.maximal_isotropic}});
    if (!img.maximal_isotropic) {
      holds = false;
      c.r.witnesses.push_back(Witness{"forward image is not maximal isotropic", p, {}, static_cast<double>(img.rank)});
    }
    if (const Value* k = c.arg("expect_kernel_rank"); k && k->text != std::to_string(img.kernel_rank)) {
      holds = false;
      c.r.witnesses.push_back(Witness{"kernel rank differs", p, {}, static_cast<double>(img.kernel_rank)});
    }
  }
  c.r.details["images"] = images;
  if (const Value* mates = c.arg("mates")) {
    auto q = parse_points(*mates, c.chart());
    if (q.size() != pts.size()) throw SemanticError("'mates' needs one point per entry of 'points'", mates->line, mates->column);
    json same = json::array();
    for (std::size_t i = 0; i < q.size(); ++i) {
      bool s = same_forward_image(m, F, pts[i], q[i], c.o.atol);
      same.push_back(s);
      if (!s) {
        holds = false;
        c.r.witnesses.push_back(Witness{"forward image depends on the fiber point", q[i], {static_cast<int>(i)}, 0.0});
      }
    }
    c.r.details["same_at_mates"] = same;
  }
  return holds;
}

bool verb_diracize(Context& c) {
  const StructureFrame& F = c.target();
  Diracization d = diracize(F, c.o);
  c.r.details["frame_ok"] = d.verdict.frame_ok;
  c.r.details["isotropic"] = d.verdict.isotropic;
  c.r.details["maximal"] = d.verdict.maximal;
  c.r.details["involutive"] = d.verdict.involutive;
  c.r.details["dirac"] = d.verdict.dirac;
  c.r.details["homogeneous"] = d.homogeneity.ok;
  c.r.coordinates = d.frame.chart->names();
  c.witnesses(d.verdict.witnesses);
  c.witnesses(d.homogeneity.witnesses);
  bool holds = d.dirac();
  const double s = c.number("s", 1.0);
  json dims = json::array();
  for (const auto& p : c.points("points", 3)) {
    DimensionCheck dc = characteristic_dimension_check(F, p, s, c.o.atol);
    dims.push_back({{"point", vec(p)}, {"lifted_rank", dc.lifted_rank}, {"expected", dc.expected}, {"tag", dc.tag}, {"ok", dc.ok}});
    if (!dc.ok) {
      holds = false;
      auto q = p;
      q.push_back(s);
      c.r.witnesses.push_back(Witness{"characteristic dimension differs", q, {}, static_cast<double>(dc.lifted_rank)});
    }
  }
  c.r.details["dimension_checks"] = dims;
  return holds;
}

bool verb_spencer(Context& c) {
  SpencerVerdict v = verify_spencer_axioms(c.target(), c.o, c.integer("trials", 2));
  bool holds = true;
  merge(c, "spenc1", v.spenc1, holds);
  merge(c, "spenc2", v.spenc2, holds);
  merge(c, "spenc3", v.spenc3, holds);
  merge(c, "anchor", v.anchor, holds);
  merge(c, "representation", v.representation, holds);
  merge(c, "isotropy", v.isotropy, holds);
  merge(c, "bracket_closed", v.bracket_dd, holds);
  return holds;
}

std::vector<Value> split_list(const Value& v) {
  std::vector<Value> out;
  std::size_t start = 0;
  while (true) {
    auto pos = v.text.find(',', start);
    out.push_back(Value{v.text.substr(start, pos == std::string::npos ? std::string::npos : pos - start), v.quoted, v.line,
                        v.column + start});
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::vector<Derivation> derivation_list(const Value* v, const Chart& chart) {
  std::vector<Derivation> out;
  if (!v) return out;
  std::size_t start = 0;
  while (start <= v->text.size()) {
    auto pos = v->text.find(';', start);
    std::string piece = v->text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    if (piece.find_first_not_of(" \t") != std::string::npos)
      out.push_back(derivation_from_components(
          parse_value_list(Value{piece, v->quoted, v->line, v->column + start}, chart, chart.dim() + 1)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

bool verb_thicken(Context& c) {
  const StructureFrame& F = c.target();
  auto E = derivation_list(c.arg("e"), c.chart());
  auto G = derivation_list(c.arg("g"), c.chart());
  ThickenResult t = thicken(F, E, G, c.o, c.number("radius", 0.1));
  c.r.coordinates = t.frame.chart->names();
  c.r.details["fiber_dim"] = t.fiber_dim;
  c.r.details["chart"] = t.frame.chart->names();
  bool holds = true;
  merge(c, "jacobi", t.jacobi, holds);
  merge(c, "coisotropic", t.coisotropic, holds);
  Classification k = classify_subbundle(t.frame, c.o);
  c.r.details["dirac_jacobi"] = k.dirac_jacobi;
  c.witnesses(k.witnesses);
  holds = holds && k.dirac_jacobi;
  if (t.fiber_dim > 0) {
    std::ostringstream s;
    for (std::size_t i = 0; i < t.fiber_dim; ++i) s << (i ? ", " : "") << t.frame.chart->name(F.dim() + i) << "=0";
    SliceImage back = backward_image_slice(t.frame, CoordinateSlice::parse(s.str(), *t.frame.chart), c.o);
    StructureFrame input = F;
    input.chart = back.frame.chart;
    Witness w;
    bool same = same_structure(back.frame, input, c.o, &w);
    c.r.details["zero_section_recovers_input"] = same;
    if (!same) {
      w.kind = "slice of the thickening differs from the input";
      c.r.witnesses.push_back(w);
    }
    holds = holds && same;
  }
  return holds;
}

bool verb_identity_suite(Context& c) {
  const int trials = c.integer("trials", 20);
  std::vector<std::size_t> dims{1, 2, 3};
  if (const Value* d = c.arg("dims")) {
    dims.clear();
    for (const auto& piece : split_list(*d)) {
      double x = parse_constant(piece);
      if (x < 1 || x > 6 || x != static_cast<double>(static_cast<int>(x)))
        throw SemanticError("dims must be integers between 1 and 6", d->line, d->column);
      dims.push_back(static_cast<std::size_t>(x));
    }
  }
  bool holds = true;
  json suites = json::array();
  for (std::size_t n : dims) {
    for (const auto& s : {cartan_suite(n, trials, c.o.seed, c.o), courant_suite(n, trials, c.o.seed + 1, c.o),
                          upsilon_suite(n, trials, c.o.seed + 2, c.o)}) {
      json ids = json::array();
      for (const auto& t : s.identities) {
        ids.push_back({{"name", t.name}, {"instances", t.instances}, {"failures", t.failures}});
        for (auto w : t.witnesses) {
          w.kind = s.name + " n=" + std::to_string(n) + ": " + w.kind;
          c.r.witnesses.push_back(w);
        }
      }
      suites.push_back({{"suite", s.name}, {"dim", n}, {"ok", s.ok()}, {"identities", ids}});
      holds = holds && s.ok();
    }
  }
  c.r.details["suites"] = suites;
  return holds;
}

}  // namespace

std::size_t RunReport::passed() const {
  std::size_t k = 0;
  for (const auto& r : results) k += r.pass ? 1 : 0;
  return k;
}

Oracle OracleOverrides::apply(Oracle o) const {
  if (seed) o.seed = *seed;
  if (samples) o.samples = *samples;
  if (atol) o.atol = *atol;
  if (rtol) o.rtol = *rtol;
  return o;
}

CheckResult run_check(const Document& doc, const CheckDef& check, const Oracle& o) {
  CheckResult r;
  r.label = check.label;
  r.verb = check.verb;
  r.target = check.target;
  r.expected = check.expect_pass;
  Context c{doc, check, o, r};
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (!check.target.empty()) r.coordinates = c.chart().names();
    if (check.verb == "check") r.holds = verb_check(c);
    else if (check.verb == "recognize") r.holds = verb_recognize(c);
    else if (check.verb == "analyze") r.holds = verb_analyze(c);
    else if (check.verb == "admissible") r.holds = verb_admissible(c);
    else if (check.verb == "pullback") r.holds = verb_pullback(c);
    else if (check.verb == "pushforward") r.holds = verb_pushforward(c);
    else if (check.verb == "diracize") r.holds = verb_diracize(c);
    else if (check.verb == "spencer") r.holds = verb_spencer(c);
    else if (check.verb == "thicken") r.holds = verb_thicken(c);
    else if (check.verb == "identity_suite") {
      r.coordinates.clear();
      r.holds = verb_identity_suite(c);
    } else throw Error("unknown verb '" + check.verb + "'");
    r.pass = r.holds == r.expected;
  } catch (const WitnessError& e) {
    r.error = e.what();
    r.witnesses.push_back(Witness{e.what(), e.point(), {}, e.value()});
    r.holds = false;
    r.pass = false;
  } catch (const std::exception& e) {
    r.error = e.what();
    r.holds = false;
    r.pass = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

RunReport run_document(const Document& doc, const Oracle& o, const std::string& only) {
  RunReport rep;
  rep.source = doc.source;
  rep.oracle = o;
  for (const auto& c : doc.checks)
    if (only.empty() || c.label == only) rep.results.push_back(run_check(doc, c, o));
  return rep;
}

CheckDef synthetic_check(const std::string& verb, const std::string& target,
                         const std::vector<std::pair<std::string, std::string>>& args) {
  CheckDef c;
  c.label = verb + (target.empty() ? "" : ":" + target);
  c.verb = verb;
  c.target = target;
  c.block.kind = "check";
  c.block.label = c.label;
  c.block.entries.emplace_back("verb", Value{verb, true, 0, 0});
  if (!target.empty()) c.block.entries.emplace_back("target", Value{target, true, 0, 0});
  for (const auto& [k, v] : args) c.block.entries.emplace_back(k, Value{v, true, 0, 0});
  return c;
}

}  // namespace omni

#include "omni/document.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "omni/morphisms.hpp"

namespace omni {

const char* const kStructureTypes[] = {"unit",  "jacobi", "two_cocycle", "flat_connection", "lcps",
                                       "homogeneous_poisson", "frame", "gauge", "pullback", "projection",
                                       nullptr};
const char* const kCheckVerbs[] = {"check",    "recognize", "analyze", "admissible", "pullback", "pushforward",
                                   "diracize", "spencer",   "thicken", "identity_suite", nullptr};

namespace {

bool listed(const char* const* table, const std::string& s) {
  for (auto p = table; *p; ++p)
    if (s == *p) return true;
  return false;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Splits on `sep`, keeping the column offset of each trimmed piece.
std::vector<std::pair<std::string, std::size_t>> split_with_offsets(const std::string& s, char sep) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    std::string piece = s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    auto lead = piece.find_first_not_of(" \t\r\n");
    out.emplace_back(trim(piece), start + (lead == std::string::npos ? 0 : lead));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void semantic(const std::string& msg, const Value& v) { throw SemanticError(msg, v.line, v.column); }
[[noreturn]] void semantic(const std::string& msg, const Block& b) { throw SemanticError(msg, b.line, b.column); }

Value offset_value(const Value& v, const std::string& text, std::size_t offset) {
  return Value{text, v.quoted, v.line, v.column + offset};
}

class Lexer {
 public:
  explicit Lexer(const std::string& t) : t_(t) {}

  struct Token {
    enum Kind { Word, String, Symbol, End } kind;
    std::string text;
    std::size_t line, column;
  };

  Token next() {
    skip();
    if (i_ >= t_.size()) return {Token::End, "", line_, col_};
    std::size_t l = line_, c = col_;
    char ch = t_[i_];
    if (ch == '{' || ch == '}' || ch == '=' || ch == ';') {
      advance();
      return {Token::Symbol, std::string(1, ch), l, c};
    }
    if (ch == '"') {
      advance();
      std::size_t cl = line_, cc = col_;
      std::string s;
      while (true) {
        if (i_ >= t_.size()) throw ParseError("unterminated string", i_, l, c);
        char d = t_[i_];
        if (d == '"') {
          advance();
          break;
        }
        if (d == '\n') throw ParseError("newline inside string", i_, line_, col_);
        if (d == '\\' && i_ + 1 < t_.size()) {
          advance();
          d = t_[i_];
        }
        s += d;
        advance();
      }
      return {Token::String, s, cl, cc};
    }
    if (word_char(ch)) {
      std::string s;
      while (i_ < t_.size() && word_char(t_[i_])) {
        s += t_[i_];
        advance();
      }
      return {Token::Word, s, l, c};
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", i_, l, c);
  }

 private:
  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '+' || c == '/';
  }
  void advance() {
    if (t_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void skip() {
    while (i_ < t_.size()) {
      char c = t_[i_];
      if (c == '#') {
        while (i_ < t_.size() && t_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& t_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

std::vector<Scalar> upper_triangle(const Value& v, const Chart& chart, std::size_t size) {
  return parse_value_list(v, chart, size * (size - 1) / 2);
}

SMat antisymmetric(const std::vector<Scalar>& upper, std::size_t size) {
  SMat M = zero_smat(size, size);
  std::size_t k = 0;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j, ++k) {
      M[i][j] = upper[k];
      M[j][i] = -upper[k];
    }
  return M;
}

std::vector<Scalar> list_or_zero(const Block& b, const std::string& key, const Chart& chart, std::size_t size) {
  const Value* v = b.find(key);
  if (!v) return std::vector<Scalar>(size);
  return parse_value_list(*v, chart, size);
}

const Value& required(const Block& b, const std::string& key) {
  const Value* v = b.find(key);
  if (!v) semantic("missing key '" + key + "' in " + b.kind + " block '" + b.label + "'", b);
  return *v;
}

Domain parse_domain(const Value& v) {
  static const std::regex part(R"(\[\s*([^,\]]+?)\s*,\s*([^\]]+?)\s*\])");
  Domain d;
  d.parts.clear();
  std::string rest;
  std::size_t last = 0;
  for (auto it = std::sregex_iterator(v.text.begin(), v.text.end(), part); it != std::sregex_iterator(); ++it) {
    rest += v.text.substr(last, static_cast<std::size_t>(it->position()) - last);
    last = static_cast<std::size_t>(it->position() + it->length());
    auto num = [&](int g) {
      Value sub = offset_value(v, (*it)[g].str(), static_cast<std::size_t>(it->position(g)));
      return parse_constant(sub);
    };
    double lo = num(1), hi = num(2);
    if (!(lo < hi)) semantic("empty interval in domain", v);
    d.parts.push_back(Interval{lo, hi});
  }
  rest += v.text.substr(last);
  for (char c : rest)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != 'u' && c != 'U')
      semantic("domain must be a union of intervals \"[a, b] u [c, d]\"", v);
  if (d.parts.empty()) semantic("domain must contain an interval", v);
  return d;
}

void check_keys(const Block& b, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : b.entries) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) semantic("unknown key '" + k + "' in " + b.kind + " block '" + b.label + "'", v);
  }
}

void check_structure_keys(const Block& b, const std::string& type) {
  if (type == "unit") check_keys(b, {"type", "chart"});
  else if (type == "jacobi" || type == "lcps") check_keys(b, {"type", "chart", "lambda", "gamma", "omega"});
  else if (type == "two_cocycle") check_keys(b, {"type", "chart", "omega", "theta"});
  else if (type == "flat_connection") check_keys(b, {"type", "chart", "gamma"});
  else if (type == "homogeneous_poisson") check_keys(b, {"type", "chart", "pi", "z"});
  else if (type == "frame") check_keys(b, {"type", "chart", "gen"});
  else if (type == "gauge") check_keys(b, {"type", "base", "omega"});
  else if (type == "pullback") check_keys(b, {"type", "base", "slice"});
  else if (type == "projection") check_keys(b, {"type", "chart", "base", "coords", "c"});
}

StructureFrame build_structure(const Block& b, const std::string& type, const ChartPtr& chart,
                               const Document& doc) {
  check_structure_keys(b, type);
  if (type == "jacobi" && b.find("omega")) semantic("jacobi takes 'lambda' and 'gamma'", *b.find("omega"));
  if (type == "lcps" && b.find("lambda")) semantic("lcps takes 'gamma' and 'omega'", *b.find("lambda"));
  const std::size_t n = chart->dim();
  const Oracle& o = doc.oracle;
  auto base_of = [&](const char* key) -> const StructureDef& {
    const Value& v = required(b, key);
    const StructureDef* s = doc.find(v.text);
    if (!s) semantic("unknown structure label '" + v.text + "'", v);
    return *s;
  };
  if (type == "unit") return unit_structure(chart);
  if (type == "jacobi") {
    SMat Lambda = zero_smat(n, n);
    if (const Value* v = b.find("lambda")) Lambda = antisymmetric(upper_triangle(*v, *chart, n), n);
    return from_jacobi(chart, JacobiMatrix::from_bivector(Lambda, list_or_zero(b, "gamma", *chart, n)));
  }
  if (type == "two_cocycle") {
    const Value* w = b.find("omega");
    const Value* t = b.find("theta");
    if ((w != nullptr) == (t != nullptr)) semantic("two_cocycle needs exactly one of 'omega' or 'theta'", b);
    if (t) return from_two_cocycle(chart, cocycle_from_precontact(parse_value_list(*t, *chart, n)));
    return from_two_cocycle(chart, LForm::from_matrix(antisymmetric(upper_triangle(*w, *chart, n + 1), n + 1)));
  }
  if (type == "flat_connection") return from_flat_connection(chart, list_or_zero(b, "gamma", *chart, n), o);
  if (type == "lcps") {
    SMat w = zero_smat(n, n);
    if (const Value* v = b.find("omega")) w = antisymmetric(upper_triangle(*v, *chart, n), n);
    return from_lcps(chart, list_or_zero(b, "gamma", *chart, n), w, o);
  }
  if (type == "homogeneous_poisson") {
    HomogeneousPoissonData d{zero_smat(n, n), list_or_zero(b, "z", *chart, n)};
    if (const Value* v = b.find("pi")) d.pi = antisymmetric(upper_triangle(*v, *chart, n), n);
    return from_homogeneous_poisson(chart, d);
  }
  if (type == "frame") {
    StructureFrame F{chart, {}, b.label};
    for (const Value* v : b.all("gen")) {
      auto c = parse_value_list(*v, *chart, 2 * (n + 1));
      F.gens.push_back({derivation_from_components({c.begin(), c.begin() + static_cast<long>(n + 1)}),
                        jet_from_components({c.begin() + static_cast<long>(n + 1), c.end()})});
    }
    if (F.gens.empty()) semantic("frame needs at least one 'gen' entry", b);
    return F;
  }
  if (type == "gauge") {
    const StructureDef& base = base_of("base");
    const std::size_t nb = base.frame.dim();
    LForm w = LForm::from_matrix(antisymmetric(upper_triangle(required(b, "omega"), *base.frame.chart, nb + 1), nb + 1));
    return gauge_transform(base.frame, w);
  }
  if (type == "pullback") {
    const StructureDef& base = base_of("base");
    const Value& s = required(b, "slice");
    CoordinateSlice slice;
    try {
      slice = CoordinateSlice::parse(s.text, *base.frame.chart);
    } catch (const Error& e) {
      semantic(e.what(), s);
    }
    return backward_image_slice(base.frame, slice, o).frame;
  }
  if (type == "projection") {
    const StructureDef& base = base_of("base");
    const Value& coords = required(b, "coords");
    std::vector<std::size_t> idx;
    for (auto& [name, off] : split_with_offsets(coords.text, ',')) {
      int i = chart->index_of(name);
      if (i < 0) semantic("unknown coordinate '" + name + "'", offset_value(coords, name, off));
      idx.push_back(static_cast<std::size_t>(i));
    }
    if (idx.size() != base.frame.dim()) semantic("projection needs one coordinate per base coordinate", coords);
    Scalar c = b.find("c") ? parse_value_scalar(*b.find("c"), *chart) : Scalar(1);
    return backward_image_projection(base.frame, chart, idx, c);
  }
  semantic("unknown constructor '" + type + "'", required(b, "type"));
}

void check_verb_keys(const Block& b, const std::string& verb) {
  auto allow = [&](std::initializer_list<const char*> extra) {
    for (const auto& [k, v] : b.entries) {
      bool ok = k == "verb" || k == "target" || k == "outcome";
      for (const char* a : extra) ok = ok || k == a;
      if (!ok) semantic("unknown key '" + k + "' for verb '" + verb + "'", v);
    }
  };
  if (verb == "check") allow({"property"});
  else if (verb == "recognize") allow({"expect"});
  else if (verb == "analyze") allow({"points", "grid", "expect_tag", "expect_rank_E", "expect_rank_K", "expect_rank_sigma_I"});
  else if (verb == "admissible") allow({"f", "kind", "hamiltonian"});
  else if (verb == "pullback") allow({"slice", "expect_frame"});
  else if (verb == "pushforward") allow({"map", "target_chart", "c", "points", "mates", "expect_kernel_rank"});
  else if (verb == "diracize") allow({"points", "s"});
  else if (verb == "spencer") allow({"trials"});
  else if (verb == "thicken") allow({"e", "g", "radius"});
  else if (verb == "identity_suite") allow({"trials", "dims"});
}

// Parses expression-valued arguments on the target chart so that malformed
// input is reported at load time.
void validate_check_arguments(const Block& b, const Chart& chart, const Document& doc) {
  const std::size_t n = chart.dim();
  for (const auto& [k, v] : b.entries) {
    if (k == "f" || k == "c") parse_value_scalar(v, chart);
    else if (k == "hamiltonian") parse_value_list(v, chart, n + 1);
    else if (k == "points" || k == "mates") parse_points(v, chart);
    else if (k == "slice") {
      try {
        CoordinateSlice::parse(v.text, chart);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        semantic(e.what(), v);
      }
    } else if (k == "e" || k == "g") {
      for (auto& [piece, off] : split_with_offsets(v.text, ';'))
        if (!piece.empty()) parse_value_list(offset_value(v, piece, off), chart, n + 1);
    } else if (k == "expect_frame") {
      if (!doc.find(v.text)) semantic("unknown structure label '" + v.text + "'", v);
    } else if (k == "map") {
      const Value* t = b.find("target_chart");
      if (!t) semantic("'map' needs 'target_chart'", v);
      parse_value_list(v, chart, split_with_offsets(t->text, ',').size());
    }
  }
}

}  // namespace

const Value* Block::find(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

std::vector<const Value*> Block::all(const std::string& key) const {
  std::vector<const Value*> out;
  for (const auto& [k, v] : entries)
    if (k == key) out.push_back(&v);
  return out;
}

std::vector<Block> parse_blocks(const std::string& text) {
  Lexer lx(text);
  std::vector<Block> blocks;
  using T = Lexer::Token;
  auto expect_symbol = [](const T& t, const char* s) {
    if (t.kind != T::Symbol || t.text != s)
      throw ParseError(std::string("expected '") + s + "' but found '" + t.text + "'", 0, t.line, t.column);
  };
  for (T t = lx.next(); t.kind != T::End; t = lx.next()) {
    if (t.kind != T::Word) throw ParseError("expected a block kind, found '" + t.text + "'", 0, t.line, t.column);
    Block b{t.text, "", t.line, t.column, {}};
    T u = lx.next();
    if (u.kind == T::Word || u.kind == T::String) {
      b.label = u.text;
      u = lx.next();
    }
    expect_symbol(u, "{");
    while (true) {
      T k = lx.next();
      if (k.kind == T::Symbol && k.text == "}") break;
      if (k.kind == T::Symbol && k.text == ";") continue;
      if (k.kind == T::End) throw ParseError("unterminated block '" + b.kind + "'", 0, b.line, b.column);
      if (k.kind != T::Word) throw ParseError("expected a key, found '" + k.text + "'", 0, k.line, k.column);
      expect_symbol(lx.next(), "=");
      T v = lx.next();
      if (v.kind != T::Word && v.kind != T::String)
        throw ParseError("expected a value after '" + k.text + " ='", 0, v.line, v.column);
      b.entries.emplace_back(k.text, Value{v.text, v.kind == T::String, v.line, v.column});
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

double parse_constant(const Value& v) {
  static const ChartPtr placeholder = make_chart({"constant"});
  static const std::regex ident(R"([A-Za-z][A-Za-z0-9_]*)");
  // Plain decimal numbers, including scientific notation such as 1e-9.
  const std::string t = trim(v.text);
  if (!t.empty()) {
    char* end = nullptr;
    const double x = std::strtod(t.c_str(), &end);
    if (end == t.c_str() + t.size() && std::isfinite(x)) return x;
  }
  for (auto it = std::sregex_iterator(v.text.begin(), v.text.end(), ident); it != std::sregex_iterator(); ++it) {
    const std::string id = it->str();
    const auto pos = static_cast<std::size_t>(it->position());
    if (id != "exp" && id != "sin" && id != "cos")
      semantic("expected a constant expression, found '" + id + "'", offset_value(v, id, pos));
  }
  return evaluate(parse_value_scalar(v, *placeholder), std::vector<double>{0.0});
}

Scalar parse_value_scalar(const Value& v, const Chart& chart) {
  try {
    return parse_scalar(v.text, chart);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), e.position(), v.line, v.column + e.position());
  }
}

std::vector<Scalar> parse_value_list(const Value& v, const Chart& chart, std::size_t expected) {
  std::vector<Scalar> out;
  for (auto& [piece, off] : split_with_offsets(v.text, ',')) out.push_back(parse_value_scalar(offset_value(v, piece, off), chart));
  if (out.size() != expected)
    semantic("expected " + std::to_string(expected) + " comma-separated expressions, found " +
                 std::to_string(out.size()),
             v);
  return out;
}

std::vector<double> parse_point(const Value& v, const Chart& chart) {
  std::vector<double> p(chart.dim(), 0.0);
  std::vector<bool> seen(chart.dim(), false);
  for (auto& [piece, off] : split_with_offsets(v.text, ',')) {
    auto eq = piece.find('=');
    if (eq == std::string::npos) semantic("point entries must read name=value", offset_value(v, piece, off));
    std::string name = trim(piece.substr(0, eq));
    int i = chart.index_of(name);
    if (i < 0) semantic("unknown coordinate '" + name + "'", offset_value(v, piece, off));
    if (seen[static_cast<std::size_t>(i)]) semantic("coordinate '" + name + "' assigned twice", offset_value(v, piece, off));
    std::string rhs = piece.substr(eq + 1);
    p[static_cast<std::size_t>(i)] = parse_constant(offset_value(v, rhs, off + eq + 1));
    seen[static_cast<std::size_t>(i)] = true;
  }
  for (std::size_t i = 0; i < chart.dim(); ++i)
    if (!seen[i]) semantic("point does not assign coordinate '" + chart.name(i) + "'", v);
  return p;
}

std::vector<std::vector<double>> parse_points(const Value& v, const Chart& chart) {
  std::vector<std::vector<double>> out;
  for (auto& [piece, off] : split_with_offsets(v.text, ';'))
    if (!piece.empty()) out.push_back(parse_point(offset_value(v, piece, off), chart));
  return out;
}

ChartPtr sub_chart(const Chart& chart, const Value& names) {
  std::vector<std::string> ns;
  std::vector<Domain> ds;
  for (auto& [name, off] : split_with_offsets(names.text, ',')) {
    if (name.empty()) continue;
    int i = chart.index_of(name);
    ns.push_back(name);
    ds.push_back(i >= 0 ? chart.domain(static_cast<std::size_t>(i)) : Domain{});
  }
  return make_chart(ns, ds);
}

std::vector<std::string> describe_frame(const StructureFrame& F) {
  std::vector<std::string> out;
  const Chart& c = *F.chart;
  for (const auto& g : F.gens) {
    std::ostringstream s;
    s << "D = (";
    for (std::size_t A = 0; A <= F.dim(); ++A) s << (A ? ", " : "") << to_string(g.D[A], c);
    s << "), psi = (";
    for (std::size_t A = 0; A <= F.dim(); ++A) s << (A ? ", " : "") << to_string(g.psi[A], c);
    s << ")";
    out.push_back(s.str());
  }
  return out;
}

void validate_check(const Document& doc, const CheckDef& c) {
  check_verb_keys(c.block, c.verb);
  if (!c.target.empty()) {
    const StructureDef* s = doc.find(c.target);
    if (!s) semantic("unknown structure label '" + c.target + "'", c.block);
    validate_check_arguments(c.block, *s->frame.chart, doc);
  }
}

const StructureDef* Document::find(const std::string& label) const {
  for (const auto& s : structures)
    if (s.label == label) return &s;
  return nullptr;
}

Document parse_document(const std::string& text, const std::string& source) {
  Document doc;
  doc.source = source;
  auto blocks = parse_blocks(text);
  std::set<std::string> labels;
  for (const auto& b : blocks) {
    if (b.kind == "chart") {
      if (doc.chart) semantic("duplicate chart block", b);
      const Value& names = required(b, "names");
      std::vector<std::string> ns;
      for (auto& [name, off] : split_with_offsets(names.text, ',')) {
        bool ok = !name.empty() && std::isalpha(static_cast<unsigned char>(name[0]));
        for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok) semantic("invalid coordinate name '" + name + "'", offset_value(names, name, off));
        if (std::find(ns.begin(), ns.end(), name) != ns.end())
          semantic("duplicate coordinate '" + name + "'", offset_value(names, name, off));
        ns.push_back(name);
      }
      std::vector<Domain> ds(ns.size());
      for (const auto& [k, v] : b.entries) {
        if (k == "names") continue;
        if (k.rfind("domain.", 0) != 0) semantic("unknown chart key '" + k + "'", v);
        auto it = std::find(ns.begin(), ns.end(), k.substr(7));
        if (it == ns.end()) semantic("domain for unknown coordinate '" + k.substr(7) + "'", v);
        ds[static_cast<std::size_t>(it - ns.begin())] = parse_domain(v);
      }
      doc.chart = make_chart(ns, ds);
    } else if (b.kind == "oracle") {
      for (const auto& [k, v] : b.entries) {
        double x = parse_constant(v);
        if (k == "seed") {
          if (x < 0 || x != static_cast<double>(static_cast<std::uint64_t>(x))) semantic("seed must be a nonnegative integer", v);
          doc.oracle.seed = static_cast<std::uint64_t>(x);
        } else if (k == "samples") {
          if (x < 1 || x != static_cast<double>(static_cast<int>(x))) semantic("samples must be a positive integer", v);
          doc.oracle.samples = static_cast<int>(x);
        } else if (k == "atol") {
          if (!(x > 0)) semantic("atol must be positive", v);
          doc.oracle.atol = x;
        } else if (k == "rtol") {
          if (!(x >= 0)) semantic("rtol must be nonnegative", v);
          doc.oracle.rtol = x;
        } else {
          semantic("unknown oracle key '" + k + "'", v);
        }
      }
    } else if (b.kind == "structure") {
      if (!doc.chart) semantic("structure declared before the chart block", b);
      if (b.label.empty()) semantic("structure block needs a label", b);
      if (!labels.insert(b.label).second) semantic("duplicate label '" + b.label + "'", b);
      const Value& type = required(b, "type");
      if (!listed(kStructureTypes, type.text)) semantic("unknown constructor '" + type.text + "'", type);
      ChartPtr chart = doc.chart;
      if (const Value* c = b.find("chart")) {
        chart = sub_chart(*doc.chart, *c);
        if (chart->dim() == 0) semantic("empty chart override", *c);
      }
      if (type.text == "pullback" || type.text == "gauge") chart = nullptr;
      StructureDef def{b.label, type.text, build_structure(b, type.text, chart ? chart : doc.chart, doc), b.line};
      def.frame.label = b.label;
      doc.structures.push_back(std::move(def));
    } else if (b.kind == "check") {
      if (b.label.empty()) semantic("check block needs a label", b);
      if (!labels.insert(b.label).second) semantic("duplicate label '" + b.label + "'", b);
      CheckDef c;
      c.label = b.label;
      const Value& verb = required(b, "verb");
      if (!listed(kCheckVerbs, verb.text)) semantic("unknown verb '" + verb.text + "'", verb);
      c.verb = verb.text;
      if (c.verb != "identity_suite") {
        const Value& target = required(b, "target");
        if (!doc.find(target.text)) semantic("unknown structure label '" + target.text + "'", target);
        c.target = target.text;
      }
      if (const Value* out = b.find("outcome")) {
        if (out->text != "pass" && out->text != "fail") semantic("outcome must be \"pass\" or \"fail\"", *out);
        c.expect_pass = out->text == "pass";
      }
      c.block = b;
      validate_check(doc, c);
      doc.checks.push_back(std::move(c));
    } else {
      semantic("unknown block kind '" + b.kind + "'", b);
    }
  }
  if (!doc.chart) throw SemanticError("document has no chart block", 1, 1);
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

}  // namespace omni

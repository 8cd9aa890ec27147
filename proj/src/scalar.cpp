#include "omni/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace omni {

namespace detail {
struct Node {
  Scalar::Op op;
  mpq_class q;
  double qd = 0.0;
  int idx = 0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};
}  // namespace detail

using detail::Node;
using Op = Scalar::Op;
using NodePtr = std::shared_ptr<const Node>;

// ---------------------------------------------------------------------------
// Domain / Chart

bool Domain::contains(double v) const {
  return std::any_of(parts.begin(), parts.end(), [v](const Interval& I) { return v >= I.lo && v <= I.hi; });
}

double Domain::total_length() const {
  double s = 0.0;
  for (const auto& I : parts) s += I.hi - I.lo;
  return s;
}

Chart::Chart(std::vector<std::string> names, std::vector<Domain> domains)
    : names_(std::move(names)), domains_(std::move(domains)) {
  if (names_.empty()) throw Error("chart must have at least one coordinate");
  if (domains_.empty()) domains_.assign(names_.size(), Domain{});
  if (domains_.size() != names_.size()) throw Error("chart domain count does not match coordinate count");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0])))
      throw Error("invalid coordinate name '" + n + "'");
    for (char c : n)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') throw Error("invalid coordinate name '" + n + "'");
    if (n == "exp" || n == "sin" || n == "cos") throw Error("coordinate name '" + n + "' is reserved");
    if (!seen.insert(n).second) throw Error("duplicate coordinate name '" + n + "'");
  }
  for (const auto& d : domains_) {
    if (d.parts.empty()) throw Error("empty coordinate domain");
    for (const auto& I : d.parts)
      if (!(I.hi > I.lo)) throw Error("coordinate interval must have positive length");
  }
}

int Chart::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

ChartPtr make_chart(std::vector<std::string> names, std::vector<Domain> domains) {
  return std::make_shared<const Chart>(std::move(names), std::move(domains));
}

// ---------------------------------------------------------------------------
// Node construction

namespace {

NodePtr mk(Op op, NodePtr a = nullptr, NodePtr b = nullptr, int idx = 0) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->idx = idx;
  return n;
}

NodePtr mk_const(const mpq_class& q) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->q = q;
  n->q.canonicalize();
  n->qd = n->q.get_d();
  return n;
}

const NodePtr& zero_node() {
  static const NodePtr z = mk_const(0);
  return z;
}


bool is_c(const NodePtr& n, long v) { return n->op == Op::Const && n->q == v; }

mpq_class qpow(const mpq_class& q, int e) {
  mpq_class r = 1;
  mpq_class base = e >= 0 ? q : mpq_class(1) / q;
  for (int k = 0; k < std::abs(e); ++k) r *= base;
  return r;
}

}  // namespace

Scalar::Scalar() : node_(zero_node()) {}
Scalar::Scalar(long value) : node_(value == 0 ? zero_node() : mk_const(value)) {}
Scalar Scalar::constant(const mpq_class& q) { return Scalar(mk_const(q)); }
Scalar Scalar::var(int index) {
  if (index < 0) throw Error("negative coordinate index");
  return Scalar(mk(Op::Var, nullptr, nullptr, index));
}

Scalar::Op Scalar::op() const { return node_->op; }
bool Scalar::is_const() const { return node_->op == Op::Const; }
bool Scalar::is_zero() const { return is_c(node_, 0); }
bool Scalar::is_one() const { return is_c(node_, 1); }
const mpq_class& Scalar::value() const { return node_->q; }
int Scalar::index() const { return node_->idx; }
Scalar Scalar::lhs() const { return Scalar(node_->a); }
Scalar Scalar::rhs() const { return Scalar(node_->b); }

std::size_t Scalar::size() const {
  std::unordered_map<const Node*, bool> seen;
  std::function<void(const Node*)> walk = [&](const Node* n) {
    if (!n || seen.count(n)) return;
    seen[n] = true;
    walk(n->a.get());
    walk(n->b.get());
  };
  walk(node_.get());
  return seen.size();
}

int Scalar::max_var() const {
  std::unordered_map<const Node*, int> memo;
  std::function<int(const Node*)> walk = [&](const Node* n) -> int {
    if (!n) return -1;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    int r = n->op == Op::Var ? n->idx : std::max(walk(n->a.get()), walk(n->b.get()));
    memo[n] = r;
    return r;
  };
  return walk(node_.get());
}

Scalar Scalar::raw_binary(Op op, const Scalar& a, const Scalar& b) { return Scalar(mk(op, a.node_, b.node_)); }
Scalar Scalar::raw_unary(Op op, const Scalar& a) { return Scalar(mk(op, a.node_)); }
Scalar Scalar::raw_pow(const Scalar& a, int exponent) { return Scalar(mk(Op::Pow, a.node_, nullptr, exponent)); }

// Smart constructors: constant folding and unit/zero identities only.
Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_const() && b.is_const()) return Scalar::constant(a.value() + b.value());
  if (b.op() == Op::Neg) return Scalar::raw_binary(Op::Sub, a, b.lhs());
  return Scalar::raw_binary(Op::Add, a, b);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.is_const() && b.is_const()) return Scalar::constant(a.value() - b.value());
  if (b.op() == Op::Neg) return Scalar::raw_binary(Op::Add, a, b.lhs());
  return Scalar::raw_binary(Op::Sub, a, b);
}

Scalar operator-(const Scalar& a) {
  if (a.is_const()) return Scalar::constant(-a.value());
  if (a.op() == Op::Neg) return a.lhs();
  return Scalar::raw_unary(Op::Neg, a);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_const() && b.is_const()) return Scalar::constant(a.value() * b.value());
  if (a.is_const() && a.value() == -1) return -b;
  if (b.is_const() && b.value() == -1) return -a;
  if (a.op() == Op::Neg && b.op() == Op::Neg) return a.lhs() * b.lhs();
  if (a.op() == Op::Neg) return -(a.lhs() * b);
  if (b.op() == Op::Neg) return -(a * b.lhs());
  return Scalar::raw_binary(Op::Mul, a, b);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_one()) return a;
  if (a.is_zero() && !b.is_zero()) return Scalar();
  if (a.is_const() && b.is_const() && b.value() != 0) return Scalar::constant(a.value() / b.value());
  if (b.is_const() && b.value() == -1) return -a;
  return Scalar::raw_binary(Op::Div, a, b);
}

Scalar pow(const Scalar& a, int exponent) {
  if (exponent == 0) return Scalar(1);
  if (exponent == 1) return a;
  if (a.is_const() && !(a.value() == 0 && exponent < 0)) return Scalar::constant(qpow(a.value(), exponent));
  return Scalar::raw_pow(a, exponent);
}

Scalar exp(const Scalar& a) { return a.is_zero() ? Scalar(1) : Scalar::raw_unary(Op::Exp, a); }
Scalar sin(const Scalar& a) { return a.is_zero() ? Scalar() : Scalar::raw_unary(Op::Sin, a); }
Scalar cos(const Scalar& a) { return a.is_zero() ? Scalar(1) : Scalar::raw_unary(Op::Cos, a); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(const std::string& text, const Chart& chart) : s_(text), chart_(chart) {}

  Scalar parse() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    Scalar e = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("syntax error at position " + std::to_string(pos_) + ": " + msg, pos_);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Scalar::raw_binary(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Scalar::raw_binary(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Scalar term() {
    Scalar lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = Scalar::raw_binary(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        Scalar rhs = unary();
        // Integer ratios are rational literals.
        if (lhs.is_const() && rhs.is_const() && lhs.value().get_den() == 1 && rhs.value().get_den() == 1 &&
            rhs.value() != 0) {
          lhs = Scalar::constant(lhs.value() / rhs.value());
        } else {
          lhs = Scalar::raw_binary(Op::Div, lhs, rhs);
        }
      } else {
        return lhs;
      }
    }
  }

  Scalar unary() {
    if (accept('-')) {
      Scalar inner = unary();
      if (inner.is_const()) return Scalar::constant(-inner.value());
      return Scalar::raw_unary(Op::Neg, inner);
    }
    return power();
  }

  Scalar power() {
    Scalar base = primary();
    if (accept('^')) {
      skip();
      bool paren = accept('(');
      bool neg = accept('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("integer exponent expected");
      long e = std::stol(s_.substr(start, pos_ - start));
      if (paren && !accept(')')) fail("')' expected");
      return Scalar::raw_pow(base, static_cast<int>(neg ? -e : e));
    }
    return base;
  }

  Scalar primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar e = expr();
      if (!accept(')')) fail("')' expected");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      skip();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        Op op;
        if (id == "exp") {
          op = Op::Exp;
        } else if (id == "sin") {
          op = Op::Sin;
        } else if (id == "cos") {
          op = Op::Cos;
        } else {
          pos_ = start;
          fail("unknown function " + id);
        }
        ++pos_;
        Scalar arg = expr();
        if (!accept(')')) fail("')' expected");
        return Scalar::raw_unary(op, arg);
      }
      int idx = chart_.index_of(id);
      if (idx < 0) throw ParseError("unknown identifier " + id, start);
      return Scalar::var(idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Scalar number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string ip = s_.substr(start, pos_ - start);
    std::string fp;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      fp = s_.substr(fs, pos_ - fs);
      if (fp.empty()) fail("digits expected after decimal point");
    }
    mpz_class num(ip + fp, 10);
    mpz_class den = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
    return Scalar::constant(mpq_class(num, den));
  }

  const std::string& s_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

// Printer precedence levels.
constexpr int kAdd = 1, kMul = 2, kUnary = 3, kPow = 4, kAtom = 5;

bool terminating(const mpz_class& den) {
  mpz_class d = den;
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

std::string decimal(const mpq_class& q) {
  // q > 0 with terminating expansion
  mpq_class scaled = q;
  int digits = 0;
  while (scaled.get_den() != 1) {
    scaled *= 10;
    scaled.canonicalize();
    ++digits;
  }
  std::string s = scaled.get_num().get_str();
  if (digits == 0) return s;
  while (static_cast<int>(s.size()) <= digits) s = "0" + s;
  return s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
}

struct Printed {
  std::string text;
  int prec;
};

class Printer {
 public:
  explicit Printer(std::function<std::string(int)> name) : name_(std::move(name)) {}

  Printed print(const Node* n) {
    switch (n->op) {
      case Op::Const: {
        const mpq_class& q = n->q;
        mpq_class a = abs(q);
        std::string body;
        int prec = kAtom;
        if (a.get_den() == 1) {
          body = a.get_num().get_str();
        } else if (terminating(a.get_den())) {
          body = decimal(a);
        } else {
          body = a.get_num().get_str() + "/" + a.get_den().get_str();
          prec = kMul;
        }
        if (q < 0) return {"-" + body, prec == kAtom ? kUnary : kMul};
        return {body, prec};
      }
      case Op::Var:
        return {name_(n->idx), kAtom};
      case Op::Add:
        return {wrap(n->a.get(), kAdd) + " + " + wrap(n->b.get(), kAdd + 1), kAdd};
      case Op::Sub:
        return {wrap(n->a.get(), kAdd) + " - " + wrap(n->b.get(), kAdd + 1), kAdd};
      case Op::Mul:
        return {wrap(n->a.get(), kMul) + "*" + wrap(n->b.get(), kMul + 1), kMul};
      case Op::Div:
        return {wrap(n->a.get(), kMul) + "/" + wrap(n->b.get(), kMul + 1), kMul};
      case Op::Neg:
        return {"-" + wrap(n->a.get(), kUnary), kUnary};
      case Op::Pow:
        return {wrap(n->a.get(), kAtom) + "^" + std::to_string(n->idx), kPow};
      case Op::Exp:
        return {"exp(" + print(n->a.get()).text + ")", kAtom};
      case Op::Sin:
        return {"sin(" + print(n->a.get()).text + ")", kAtom};
      case Op::Cos:
        return {"cos(" + print(n->a.get()).text + ")", kAtom};
    }
    return {"?", kAtom};
  }

 private:
  std::string wrap(const Node* n, int need) {
    Printed p = print(n);
    if (p.prec < need) return "(" + p.text + ")";
    return p.text;
  }
  std::function<std::string(int)> name_;
};

}  // namespace

Scalar parse_scalar(const std::string& text, const Chart& chart) { return Parser(text, chart).parse(); }

std::string to_string(const Scalar& f, const Chart& chart) {
  return Printer([&chart](int i) {
           return i < static_cast<int>(chart.dim()) ? chart.name(i) : "z" + std::to_string(i);
         })
      .print(f.node())
      .text;
}

std::string to_string(const Scalar& f) {
  return Printer([](int i) { return "z" + std::to_string(i); }).print(f.node()).text;
}

bool structurally_equal(const Scalar& a, const Scalar& b) {
  std::function<bool(const Node*, const Node*)> eq = [&](const Node* x, const Node* y) -> bool {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->op != y->op) return false;
    switch (x->op) {
      case Op::Const:
        return x->q == y->q;
      case Op::Var:
        return x->idx == y->idx;
      case Op::Pow:
        return x->idx == y->idx && eq(x->a.get(), y->a.get());
      default:
        return eq(x->a.get(), y->a.get()) && eq(x->b.get(), y->b.get());
    }
  };
  return eq(a.node(), b.node());
}

// ---------------------------------------------------------------------------
// Differentiation and substitution

Scalar differentiate(const Scalar& f, int i, std::size_t dim) {
  if (i < 0 || static_cast<std::size_t>(i) >= dim)
    throw Error("derivative index " + std::to_string(i) + " out of range for chart of dimension " +
                std::to_string(dim));
  std::unordered_map<const Node*, Scalar> memo;
  std::function<Scalar(const Scalar&)> d = [&](const Scalar& g) -> Scalar {
    const Node* n = g.node();
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Scalar r;
    switch (n->op) {
      case Op::Const:
        r = Scalar();
        break;
      case Op::Var:
        r = Scalar(n->idx == i ? 1 : 0);
        break;
      case Op::Add:
        r = d(g.lhs()) + d(g.rhs());
        break;
      case Op::Sub:
        r = d(g.lhs()) - d(g.rhs());
        break;
      case Op::Mul:
        r = d(g.lhs()) * g.rhs() + g.lhs() * d(g.rhs());
        break;
      case Op::Div: {
        Scalar u = g.lhs(), v = g.rhs();
        Scalar du = d(u), dv = d(v);
        r = du / v - (u * dv) / pow(v, 2);
        break;
      }
      case Op::Neg:
        r = -d(g.lhs());
        break;
      case Op::Pow: {
        int k = n->idx;
        r = Scalar(k) * pow(g.lhs(), k - 1) * d(g.lhs());
        break;
      }
      case Op::Exp:
        r = g * d(g.lhs());
        break;
      case Op::Sin:
        r = cos(g.lhs()) * d(g.lhs());
        break;
      case Op::Cos:
        r = -(sin(g.lhs()) * d(g.lhs()));
        break;
    }
    memo.emplace(n, r);
    return r;
  };
  return d(f);
}

Scalar substitute(const Scalar& f, const std::vector<Scalar>& images) {
  std::unordered_map<const Node*, Scalar> memo;
  std::function<Scalar(const Scalar&)> s = [&](const Scalar& g) -> Scalar {
    const Node* n = g.node();
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Scalar r;
    switch (n->op) {
      case Op::Const:
        r = g;
        break;
      case Op::Var:
        if (n->idx >= static_cast<int>(images.size()))
          throw ChartMismatch("substitution has no image for coordinate " + std::to_string(n->idx));
        r = images[n->idx];
        break;
      case Op::Add:
        r = s(g.lhs()) + s(g.rhs());
        break;
      case Op::Sub:
        r = s(g.lhs()) - s(g.rhs());
        break;
      case Op::Mul:
        r = s(g.lhs()) * s(g.rhs());
        break;
      case Op::Div:
        r = s(g.lhs()) / s(g.rhs());
        break;
      case Op::Neg:
        r = -s(g.lhs());
        break;
      case Op::Pow:
        r = pow(s(g.lhs()), n->idx);
        break;
      case Op::Exp:
        r = exp(s(g.lhs()));
        break;
      case Op::Sin:
        r = sin(s(g.lhs()));
        break;
      case Op::Cos:
        r = cos(s(g.lhs()));
        break;
    }
    memo.emplace(n, r);
    return r;
  };
  return s(f);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

class BatchEvaluator {
 public:
  BatchEvaluator(const std::vector<std::vector<double>>& pts, double atol) : pts_(pts), atol_(atol) {}

  const std::vector<double>& eval(const Node* n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    const std::size_t N = pts_.size();
    std::vector<double> out(N);
    switch (n->op) {
      case Op::Const:
        std::fill(out.begin(), out.end(), n->qd);
        break;
      case Op::Var:
        for (std::size_t k = 0; k < N; ++k) {
          if (n->idx >= static_cast<int>(pts_[k].size()))
            throw ChartMismatch("point has no coordinate " + std::to_string(n->idx));
          out[k] = pts_[k][n->idx];
        }
        break;
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
      case Op::Div: {
        const auto& a = eval(n->a.get());
        const auto& b = eval(n->b.get());
        for (std::size_t k = 0; k < N; ++k) {
          switch (n->op) {
            case Op::Add:
              out[k] = a[k] + b[k];
              break;
            case Op::Sub:
              out[k] = a[k] - b[k];
              break;
            case Op::Mul:
              out[k] = a[k] * b[k];
              break;
            default:
              if (std::abs(b[k]) < atol_) throw EvalError("division by near-zero denominator", pts_[k]);
              out[k] = a[k] / b[k];
          }
        }
        break;
      }
      case Op::Neg: {
        const auto& a = eval(n->a.get());
        for (std::size_t k = 0; k < N; ++k) out[k] = -a[k];
        break;
      }
      case Op::Pow: {
        const auto& a = eval(n->a.get());
        for (std::size_t k = 0; k < N; ++k) {
          if (n->idx < 0 && std::abs(a[k]) < atol_)
            throw EvalError("negative power of near-zero base", pts_[k]);
          out[k] = std::pow(a[k], n->idx);
        }
        break;
      }
      case Op::Exp:
      case Op::Sin:
      case Op::Cos: {
        const auto& a = eval(n->a.get());
        for (std::size_t k = 0; k < N; ++k)
          out[k] = n->op == Op::Exp ? std::exp(a[k]) : n->op == Op::Sin ? std::sin(a[k]) : std::cos(a[k]);
        break;
      }
    }
    for (std::size_t k = 0; k < N; ++k)
      if (!std::isfinite(out[k])) throw EvalError("non-finite value", pts_[k]);
    return memo_.emplace(n, std::move(out)).first->second;
  }

 private:
  const std::vector<std::vector<double>>& pts_;
  double atol_;
  std::unordered_map<const Node*, std::vector<double>> memo_;
};

}  // namespace

std::vector<double> evaluate_batch(const Scalar& f, const std::vector<std::vector<double>>& pts, double atol) {
  if (pts.empty()) return {};
  BatchEvaluator ev(pts, atol);
  return ev.eval(f.node());
}

double evaluate(const Scalar& f, const std::vector<double>& p, double atol) {
  std::vector<std::vector<double>> pts{p};
  return evaluate_batch(f, pts, atol)[0];
}

double evaluate(const Scalar& f, const Point& p, double atol) {
  if (p.chart && f.max_var() >= static_cast<int>(p.chart->dim()))
    throw ChartMismatch("expression uses a coordinate outside the point's chart");
  return evaluate(f, p.x, atol);
}

// ---------------------------------------------------------------------------
// Oracle

std::vector<std::vector<double>> Oracle::points(const Chart& chart) const {
  if (samples < 1) throw Error("oracle needs at least one sample");
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<std::vector<double>> pts(samples, std::vector<double>(chart.dim()));
  for (int k = 0; k < samples; ++k) {
    for (std::size_t i = 0; i < chart.dim(); ++i) {
      const Domain& d = chart.domain(i);
      double t = unit() * d.total_length();
      for (const auto& I : d.parts) {
        double len = I.hi - I.lo;
        if (t <= len || &I == &d.parts.back()) {
          pts[k][i] = I.lo + std::min(t, len);
          break;
        }
        t -= len;
      }
    }
  }
  return pts;
}

bool Oracle::close(double a, double b) const {
  return std::abs(a - b) <= atol + rtol * std::max(std::abs(a), std::abs(b));
}

EqualityVerdict scalars_equal_at(const Scalar& f, const Scalar& g, const std::vector<std::vector<double>>& pts,
                                 const Oracle& o) {
  auto fv = evaluate_batch(f, pts, o.atol);
  auto gv = evaluate_batch(g, pts, o.atol);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!o.close(fv[k], gv[k])) return EqualityVerdict{false, pts[k], fv[k], gv[k]};
  }
  return {};
}

EqualityVerdict scalars_equal(const Scalar& f, const Scalar& g, const Chart& chart, const Oracle& o) {
  int mv = std::max(f.max_var(), g.max_var());
  if (mv >= static_cast<int>(chart.dim())) throw ChartMismatch("expression uses a coordinate outside the chart");
  return scalars_equal_at(f, g, o.points(chart), o);
}

EqualityVerdict nonvanishing(const Scalar& f, const Chart& chart, const Oracle& o) {
  auto pts = o.points(chart);
  auto v = evaluate_batch(f, pts, o.atol);
  // A sign change inside one connected piece of the domain forces a zero.
  std::map<std::vector<std::size_t>, std::size_t> first;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (std::abs(v[k]) <= o.atol) return EqualityVerdict{false, pts[k], v[k], 0.0};
    std::vector<std::size_t> piece(chart.dim());
    for (std::size_t i = 0; i < chart.dim(); ++i) {
      const auto& parts = chart.domain(i).parts;
      for (std::size_t j = 0; j < parts.size(); ++j)
        if (pts[k][i] >= parts[j].lo && pts[k][i] <= parts[j].hi) piece[i] = j;
    }
    auto [it, fresh] = first.emplace(piece, k);
    if (!fresh && (v[it->second] > 0) != (v[k] > 0)) return EqualityVerdict{false, pts[k], v[k], v[it->second]};
  }
  return {};
}

}  // namespace omni

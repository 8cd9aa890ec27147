#include "omni/line_bundle.hpp"

#include <cmath>

namespace omni {

namespace {
void same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw ChartMismatch("operands live on charts of different dimension");
}
}  // namespace

Derivation Derivation::delta(std::size_t n, std::size_t i) {
  if (i >= n) throw Error("delta index out of range");
  Derivation d = zero(n);
  d.X[i] = 1;
  return d;
}

Derivation Derivation::one(std::size_t n) {
  Derivation d = zero(n);
  d.a = 1;
  return d;
}

Derivation Derivation::frame(std::size_t n, std::size_t A) { return A < n ? delta(n, A) : one(n); }

std::vector<Scalar> Derivation::components() const {
  std::vector<Scalar> c = X;
  c.push_back(a);
  return c;
}

Jet1 Jet1::frame(std::size_t n, std::size_t A) {
  if (A > n) throw Error("jet frame index out of range");
  Jet1 j = zero(n);
  if (A < n) {
    j.eta[A] = 1;
  } else {
    j.g = 1;
  }
  return j;
}

std::vector<Scalar> Jet1::components() const {
  std::vector<Scalar> c = eta;
  c.push_back(g);
  return c;
}

Derivation operator+(const Derivation& d, const Derivation& e) {
  same_dim(d.dim(), e.dim());
  Derivation r = d;
  for (std::size_t i = 0; i < d.dim(); ++i) r.X[i] += e.X[i];
  r.a += e.a;
  return r;
}

Derivation operator-(const Derivation& d, const Derivation& e) {
  same_dim(d.dim(), e.dim());
  Derivation r = d;
  for (std::size_t i = 0; i < d.dim(); ++i) r.X[i] -= e.X[i];
  r.a -= e.a;
  return r;
}

Derivation operator*(const Scalar& f, const Derivation& d) {
  Derivation r = d;
  for (auto& x : r.X) x = f * x;
  r.a = f * r.a;
  return r;
}

Jet1 operator+(const Jet1& p, const Jet1& q) {
  same_dim(p.dim(), q.dim());
  Jet1 r = p;
  for (std::size_t i = 0; i < p.dim(); ++i) r.eta[i] += q.eta[i];
  r.g += q.g;
  return r;
}

Jet1 operator-(const Jet1& p, const Jet1& q) {
  same_dim(p.dim(), q.dim());
  Jet1 r = p;
  for (std::size_t i = 0; i < p.dim(); ++i) r.eta[i] -= q.eta[i];
  r.g -= q.g;
  return r;
}

Jet1 operator*(const Scalar& f, const Jet1& p) {
  Jet1 r = p;
  for (auto& e : r.eta) e = f * e;
  r.g = f * r.g;
  return r;
}

Scalar apply_symbol(const Derivation& D, const Scalar& f) {
  Scalar s;
  for (std::size_t i = 0; i < D.dim(); ++i) {
    if (D.X[i].is_zero()) continue;
    s += D.X[i] * differentiate(f, static_cast<int>(i), D.dim());
  }
  return s;
}

Scalar apply_derivation(const Derivation& D, const Scalar& f) {
  if (f.max_var() >= static_cast<int>(D.dim())) throw ChartMismatch("scalar uses a coordinate outside the chart");
  return apply_symbol(D, f) + D.a * f;
}

Derivation commutator(const Derivation& D, const Derivation& E) {
  same_dim(D.dim(), E.dim());
  const std::size_t n = D.dim();
  Derivation r = Derivation::zero(n);
  for (std::size_t k = 0; k < n; ++k) r.X[k] = apply_symbol(D, E.X[k]) - apply_symbol(E, D.X[k]);
  r.a = apply_symbol(D, E.a) - apply_symbol(E, D.a);
  return r;
}

Scalar jet_pairing(const Derivation& D, const Jet1& psi) {
  same_dim(D.dim(), psi.dim());
  Scalar s;
  for (std::size_t i = 0; i < D.dim(); ++i) s += D.X[i] * psi.eta[i];
  return s + D.a * psi.g;
}

Jet1 jet_prolong(const Scalar& f, std::size_t n) {
  if (f.max_var() >= static_cast<int>(n)) throw ChartMismatch("scalar uses a coordinate outside the chart");
  Jet1 j = Jet1::zero(n);
  for (std::size_t i = 0; i < n; ++i) j.eta[i] = differentiate(f, static_cast<int>(i), n);
  j.g = f;
  return j;
}

Derivation derivation_from_components(const std::vector<Scalar>& c) {
  if (c.empty()) throw Error("empty component list");
  return Derivation(std::vector<Scalar>(c.begin(), c.end() - 1), c.back());
}

Jet1 jet_from_components(const std::vector<Scalar>& c) {
  if (c.empty()) throw Error("empty component list");
  return Jet1(std::vector<Scalar>(c.begin(), c.end() - 1), c.back());
}

void LineBundleMorphism::validate(const Oracle& o) const {
  if (!source || !target) throw Error("morphism needs source and target charts");
  if (base.size() != target->dim()) throw ChartMismatch("base map needs one component per target coordinate");
  auto nv = nonvanishing(c, *source, o);
  if (!nv.equal) throw WitnessError("fiber factor vanishes", nv.witness, nv.lhs);
  auto pts = o.points(*source);
  for (std::size_t j = 0; j < base.size(); ++j) {
    auto vals = evaluate_batch(base[j], pts, o.atol);
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (!target->domain(j).contains(vals[k]))
        throw WitnessError("base map leaves the target domain in coordinate " + target->name(j), pts[k], vals[k]);
  }
}

LineBundleMorphism identity_morphism(const ChartPtr& chart) {
  LineBundleMorphism F;
  F.source = chart;
  F.target = chart;
  for (std::size_t i = 0; i < chart->dim(); ++i) F.base.push_back(Scalar::var(static_cast<int>(i)));
  return F;
}

LineBundleMorphism compose(const LineBundleMorphism& G, const LineBundleMorphism& F) {
  if (F.target->dim() != G.source->dim()) throw ChartMismatch("composition of incompatible morphisms");
  LineBundleMorphism H;
  H.source = F.source;
  H.target = G.target;
  for (const auto& g : G.base) H.base.push_back(substitute(g, F.base));
  H.c = F.c * substitute(G.c, F.base);
  return H;
}

Scalar pullback_section(const LineBundleMorphism& F, const Scalar& f_target) {
  return substitute(f_target, F.base) / F.c;
}

std::vector<double> pushforward_derivation(const LineBundleMorphism& F, const Derivation& D,
                                           const std::vector<double>& p, double atol) {
  const std::size_t n = F.source->dim();
  same_dim(n, D.dim());
  std::vector<double> X(n);
  for (std::size_t i = 0; i < n; ++i) X[i] = evaluate(D.X[i], p, atol);
  std::vector<double> out;
  for (const auto& Fj : F.base) {
    double y = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (X[i] != 0.0) y += X[i] * evaluate(differentiate(Fj, static_cast<int>(i), n), p, atol);
    out.push_back(y);
  }
  double c = evaluate(F.c, p, atol);
  if (std::abs(c) < atol) throw EvalError("fiber factor vanishes", p);
  double Xc = evaluate(apply_symbol(D, F.c), p, atol);
  out.push_back(evaluate(D.a, p, atol) - Xc / c);
  return out;
}

Jet1 pullback_jet(const LineBundleMorphism& F, const Jet1& psi) {
  const std::size_t n = F.source->dim();
  const std::size_t m = F.target->dim();
  same_dim(m, psi.dim());
  std::vector<Scalar> eta_t(m);
  for (std::size_t j = 0; j < m; ++j) eta_t[j] = substitute(psi.eta[j], F.base);
  Scalar g_t = substitute(psi.g, F.base);
  Jet1 out = Jet1::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar s;
    for (std::size_t j = 0; j < m; ++j) s += differentiate(F.base[j], static_cast<int>(i), n) * eta_t[j];
    Scalar dc = differentiate(F.c, static_cast<int>(i), n);
    out.eta[i] = s / F.c - g_t * dc / pow(F.c, 2);
  }
  out.g = g_t / F.c;
  return out;
}

std::vector<double> evaluate(const Derivation& D, const std::vector<double>& p, double atol) {
  std::vector<double> v;
  for (const auto& x : D.X) v.push_back(evaluate(x, p, atol));
  v.push_back(evaluate(D.a, p, atol));
  return v;
}

std::vector<double> evaluate(const Jet1& psi, const std::vector<double>& p, double atol) {
  std::vector<double> v;
  for (const auto& e : psi.eta) v.push_back(evaluate(e, p, atol));
  v.push_back(evaluate(psi.g, p, atol));
  return v;
}

}  // namespace omni

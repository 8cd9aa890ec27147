#include "omni/diracization.hpp"

namespace omni {

namespace {

Scalar s_var(std::size_t n) { return Scalar::var(static_cast<int>(n)); }

// First component where the two lists differ under the oracle, or -1.
int first_mismatch(const std::vector<Scalar>& a, const std::vector<Scalar>& b, const Chart& chart, const Oracle& o,
                   std::vector<double>* where) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto v = scalars_equal(a[i], b[i], chart, o);
    if (!v.equal) {
      if (where) *where = v.witness;
      return static_cast<int>(i);
    }
  }
  return -1;
}

void compare(CheckVerdict& v, const std::string& kind, const std::vector<Scalar>& a, const std::vector<Scalar>& b,
             const Chart& chart, const Oracle& o) {
  std::vector<double> where;
  int i = first_mismatch(a, b, chart, o, &where);
  if (i >= 0) v.fail(Witness{kind, where, {i}, 0.0});
}

}  // namespace

ChartPtr extended_chart(const ChartPtr& chart) {
  std::vector<std::string> names = chart->names();
  std::vector<Domain> domains = chart->domains();
  std::string s = "s";
  while (chart->index_of(s) >= 0) s += "_";
  names.push_back(s);
  domains.push_back(Domain::symmetric(0.5, 2.0));
  return make_chart(names, domains);
}

Scalar lift_section(const Scalar& f, std::size_t n) { return s_var(n) * f; }

std::vector<Scalar> lift_derivation(const Derivation& D) {
  std::vector<Scalar> X = D.X;
  X.push_back(D.a.is_zero() ? Scalar() : D.a * s_var(D.dim()));
  return X;
}

std::vector<Scalar> lift_jet(const Jet1& psi) {
  const std::size_t n = psi.dim();
  std::vector<Scalar> alpha(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    if (!psi.eta[i].is_zero()) alpha[i] = s_var(n) * psi.eta[i];
  alpha[n] = psi.g;
  return alpha;
}

TangentSection lift_omni(const OmniSection& a) { return TangentSection{lift_derivation(a.D), lift_jet(a.psi)}; }

std::vector<Scalar> euler_field(std::size_t n) {
  std::vector<Scalar> E(n + 1);
  E[n] = s_var(n);
  return E;
}

CheckVerdict intertwining_check(const ChartPtr& chart, const OmniSection& a, const OmniSection& b, const Scalar& f,
                                const Oracle& o) {
  const std::size_t n = chart->dim();
  ChartPtr ext = extended_chart(chart);
  const Scalar s = s_var(n);
  CheckVerdict v;
  compare(v, "lift of commutator", lift_derivation(commutator(a.D, b.D)),
          vector_bracket(lift_derivation(a.D), lift_derivation(b.D)), *ext, o);
  compare(v, "pairing of lifts", {tangent_pairing(lift_omni(a), lift_omni(b))}, {s * omni_pairing(a, b)}, *ext, o);
  TangentSection lhs = lift_omni(dorfman(a, b)), rhs = tangent_dorfman(lift_omni(a), lift_omni(b));
  compare(v, "lift of Dorfman bracket", lhs.components(), rhs.components(), *ext, o);
  compare(v, "lifted derivation on lifted section", {vector_apply(lift_derivation(a.D), lift_section(f, n))},
          {s * apply_derivation(a.D, f)}, *ext, o);
  Scalar contraction;
  auto X = lift_derivation(a.D);
  auto alpha = lift_jet(a.psi);
  for (std::size_t i = 0; i <= n; ++i)
    if (!X[i].is_zero() && !alpha[i].is_zero()) contraction += alpha[i] * X[i];
  compare(v, "lifted jet on lifted derivation", {contraction}, {s * jet_pairing(a.D, a.psi)}, *ext, o);
  if (!v.ok) v.detail = "lift does not intertwine the operations";
  return v;
}

Diracization diracize(const StructureFrame& F, const Oracle& o) {
  const std::size_t n = F.dim();
  Diracization out;
  out.frame.chart = extended_chart(F.chart);
  for (const auto& g : F.gens) out.frame.gens.push_back(lift_omni(g));
  out.verdict = classify_tangent(out.frame, o);
  // The lift of a Dirac-Jacobi structure is Dirac; a failure there is a bug.
  if (!out.verdict.dirac && classify_subbundle(F, o).dirac_jacobi)
    out.verdict.witnesses.push_back(Witness{"implementation bug: lift of a structure fails the Dirac checks", {}, {}, 0.0});

  const auto E = euler_field(n);
  const std::vector<Scalar> zero(n + 1);
  for (std::size_t k = 0; k < out.frame.rank(); ++k) {
    const auto& g = out.frame.gens[k];
    std::vector<double> where;
    int i = first_mismatch(vector_bracket(E, g.X), zero, *out.frame.chart, o, &where);
    if (i >= 0) out.homogeneity.fail(Witness{"[E, X~] nonzero", where, {static_cast<int>(k), i}, 0.0});
    i = first_mismatch(lie_derivative_1form(E, g.alpha), g.alpha, *out.frame.chart, o, &where);
    if (i >= 0) out.homogeneity.fail(Witness{"L_E psi~ differs from psi~", where, {static_cast<int>(k), i}, 0.0});
  }
  if (!out.homogeneity.ok) out.homogeneity.detail = "lifted frame is not homogeneous";
  return out;
}

DimensionCheck characteristic_dimension_check(const StructureFrame& F, const std::vector<double>& p, double s,
                                              double atol) {
  const std::size_t n = F.dim();
  DimensionCheck out;
  PointReport r = point_report(F, p, atol);
  out.tag = r.tag();
  out.expected = r.rank_sigma_I + (r.precontact ? 1 : 0);
  std::vector<double> q = p;
  q.push_back(s);
  Mat V(n + 1, F.rank());
  for (std::size_t k = 0; k < F.rank(); ++k) {
    auto X = lift_derivation(F.gens[k].D);
    for (std::size_t i = 0; i <= n; ++i) V(i, k) = X[i].is_zero() ? 0.0 : evaluate(X[i], q, atol);
  }
  out.lifted_rank = rank(V, atol);
  out.ok = out.lifted_rank == out.expected;
  return out;
}

}  // namespace omni

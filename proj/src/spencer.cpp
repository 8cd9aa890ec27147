#include "omni/spencer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "omni/random.hpp"
#include "omni/tangent_courant.hpp"

namespace omni {

namespace {

void compare(CheckVerdict& v, const std::string& kind, const std::vector<Scalar>& a, const std::vector<Scalar>& b,
             const Chart& chart, const Oracle& o) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto e = scalars_equal(a[i], b[i], chart, o);
    if (!e.equal) {
      v.fail(Witness{kind, e.witness, {static_cast<int>(i)}, e.lhs - e.rhs});
      return;
    }
  }
}

std::vector<Scalar> add(const std::vector<Scalar>& a, const std::vector<Scalar>& b, const Scalar& sb = Scalar(1)) {
  std::vector<Scalar> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + sb * b[i];
  return r;
}

// Numeric determinant by elimination with partial pivoting.
double numeric_determinant(Mat A) {
  const std::size_t n = A.rows();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(A(r, c)) > std::abs(A(p, c))) p = r;
    if (A(p, c) == 0.0) return 0.0;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(A(p, k), A(c, k));
      det = -det;
    }
    det *= A(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = A(r, c) / A(c, c);
      for (std::size_t k = c; k < n; ++k) A(r, k) -= f * A(c, k);
    }
  }
  return det;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t total) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < total - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

SpencerPair classical_spencer(const Jet1& psi) {
  const std::size_t n = psi.dim();
  SpencerPair out{exterior_d(psi.g, n), psi.g};
  for (std::size_t i = 0; i < n; ++i) out.D[i] = out.D[i] - psi.eta[i];
  return out;
}

Jet1 spencer_embedding(const std::vector<Scalar>& omega) { return Jet1(omega, Scalar()); }

std::vector<Scalar> lie_derivative_lform1(const Derivation& D, const std::vector<Scalar>& w) {
  const std::size_t n = D.dim();
  std::vector<Scalar> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Scalar s = apply_derivation(D, w[j]);
    for (std::size_t k = 0; k < n; ++k)
      if (!w[k].is_zero() && !D.X[k].is_zero()) s += w[k] * differentiate(D.X[k], static_cast<int>(j), n);
    out[j] = s;
  }
  return out;
}

SpencerValue spencer_of_section(const OmniSection& gamma) {
  SpencerPair p = classical_spencer(gamma.psi);
  return SpencerValue{p.D, p.l, gamma.D, gamma.D.X};
}

SpencerValue spencer_of_structure(const StructureFrame& F, const std::vector<Scalar>& coeffs) {
  if (coeffs.size() != F.rank()) throw Error("coefficient count differs from the frame rank");
  return spencer_of_section(combination(F, coeffs));
}

OmniSection spencer_morphism(const SpencerValue& v) {
  const std::size_t n = v.nabla.dim();
  return OmniSection(v.nabla, spencer_embedding(v.D) - jet_prolong(v.l, n));
}

FrameProjector::FrameProjector(const StructureFrame& F, const Oracle& o) : F_(F) {
  const std::size_t m = F.rank(), rows = 2 * (F.dim() + 1);
  if (m == 0 || m > rows) throw Error("projector needs a nonempty frame");
  auto mats = F.matrices(o.points(*F.chart), o.atol);
  // Rank candidates by the smallest |det| over the oracle points, so that the
  // inverse stays well conditioned; ties keep lexicographic order.
  std::vector<std::pair<double, std::vector<std::size_t>>> candidates;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  do {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& M : mats) worst = std::min(worst, std::abs(numeric_determinant(M.select_rows(idx))));
    if (worst > o.atol) candidates.emplace_back(worst, idx);
  } while (next_combination(idx, rows));
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [worst, sel] : candidates) {
    SMat A = zero_smat(m, m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k < m; ++k) A[r][k] = F.gens[k].components()[sel[r]];
    if (!nonvanishing(determinant(A), *F.chart, o).equal) continue;
    rows_ = sel;
    inv_ = inverse(A, *F.chart, o);
    return;
  }
  throw Error("no coordinate complement keeps the frame invertible on the chart");
}

std::vector<Scalar> FrameProjector::coefficients(const OmniSection& s) const {
  auto comps = s.components();
  const std::size_t m = rows_.size();
  std::vector<Scalar> c(m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t r = 0; r < m; ++r)
      if (!inv_[k][r].is_zero() && !comps[rows_[r]].is_zero()) c[k] += inv_[k][r] * comps[rows_[r]];
  return c;
}

OmniSection FrameProjector::project(const OmniSection& s) const { return combination(F_, coefficients(s)); }

SpencerVerdict verify_spencer_axioms(const StructureFrame& F, const Oracle& o, int trials) {
  const std::size_t n = F.dim(), m = F.rank();
  const Chart& chart = *F.chart;
  SpencerVerdict v;
  auto pts = o.points(chart);

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Witness w;
      if (!section_in_span(F, dorfman(F.gens[i], F.gens[j]), pts, o.atol, &w)) {
        w.indices = {static_cast<int>(i), static_cast<int>(j)};
        v.bracket_dd.fail(w);
      }
    }

  FrameProjector P(F, o);
  RandomGen gen(o.seed ^ 0x5eedULL, n);
  for (int t = 0; t < trials; ++t) {
    std::vector<Scalar> ca(m), cb(m);
    for (auto& c : ca) c = gen.scalar(1);
    for (auto& c : cb) c = gen.scalar(1);
    OmniSection a = combination(F, ca), b = combination(F, cb);
    SpencerValue va = spencer_of_section(a), vb = spencer_of_section(b);

    Scalar f = gen.scalar(2);
    SpencerValue vfa = spencer_of_section(f * a);
    std::vector<Scalar> rhs1(n);
    auto df = exterior_d(f, n);
    for (std::size_t j = 0; j < n; ++j) rhs1[j] = f * va.D[j] + df[j] * va.l;
    compare(v.spenc1, "D(f a) differs from f D(a) + df l(a)", vfa.D, rhs1, chart, o);
    compare(v.spenc1, "l(f a) differs from f l(a)", {vfa.l}, {f * va.l}, chart, o);

    OmniSection br = P.project(dorfman(a, b));
    SpencerValue vbr = spencer_of_section(br);
    compare(v.spenc2, "D([a, b]) differs from L_{nabla a} D(b) - L_{nabla b} D(a)", vbr.D,
            add(lie_derivative_lform1(va.nabla, vb.D), lie_derivative_lform1(vb.nabla, va.D), Scalar(-1)), chart, o);

    Scalar contraction;
    for (std::size_t j = 0; j < n; ++j)
      if (!vb.rho[j].is_zero() && !va.D[j].is_zero()) contraction += vb.rho[j] * va.D[j];
    compare(v.spenc3, "l([a, b]) differs from nabla_a l(b) - i_{rho(b)} D(a)", {vbr.l},
            {apply_derivation(va.nabla, vb.l) - contraction}, chart, o);

    compare(v.anchor, "sigma(nabla a) differs from rho(a)", va.nabla.X, va.rho, chart, o);
    compare(v.representation, "nabla of the bracket differs from the commutator", vbr.nabla.components(),
            commutator(va.nabla, vb.nabla).components(), chart, o);
    compare(v.isotropy, "Spencer morphism images are not orthogonal",
            {omni_pairing(spencer_morphism(va), spencer_morphism(vb))}, {Scalar()}, chart, o);
  }
  if (!v.spenc1.ok) v.spenc1.detail = "first Spencer identity fails";
  if (!v.spenc2.ok) v.spenc2.detail = "second Spencer identity fails";
  if (!v.spenc3.ok) v.spenc3.detail = "third Spencer identity fails";
  if (!v.representation.ok) v.representation.detail = "nabla is not a representation";
  if (!v.isotropy.ok) v.isotropy.detail = "Spencer morphism image is not isotropic";
  if (!v.bracket_dd.ok) v.bracket_dd.detail = "frame is not closed under the Dorfman bracket";
  return v;
}

}  // namespace omni

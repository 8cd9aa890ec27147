#include "omni/structures.hpp"

namespace omni {

JacobiMatrix JacobiMatrix::from_matrix(const SMat& M) {
  if (M.empty()) throw Error("empty Jacobi matrix");
  JacobiMatrix J(M.size() - 1);
  for (std::size_t A = 0; A < M.size(); ++A) {
    if (M[A].size() != M.size()) throw Error("Jacobi matrix must be square");
    for (std::size_t B = A + 1; B < M.size(); ++B) J.set(A, B, M[A][B]);
  }
  return J;
}

JacobiMatrix JacobiMatrix::from_bivector(const SMat& Lambda, const std::vector<Scalar>& Gamma) {
  const std::size_t n = Gamma.size();
  if (Lambda.size() != n) throw Error("bivector and vector part differ in dimension");
  JacobiMatrix J(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (Lambda[i].size() != n) throw Error("bivector must be square");
    for (std::size_t j = i + 1; j < n; ++j) J.set(i, j, Lambda[i][j]);
    J.set(i, n, Gamma[i]);
  }
  return J;
}

Scalar JacobiMatrix::at(std::size_t A, std::size_t B) const { return M_.at(A).at(B); }

void JacobiMatrix::set(std::size_t A, std::size_t B, const Scalar& v) {
  if (A == B) throw Error("diagonal of a Jacobi matrix is zero");
  M_.at(A).at(B) = v;
  M_.at(B).at(A) = -v;
}

Derivation JacobiMatrix::sharp(const Jet1& psi) const {
  if (psi.dim() != n_) throw ChartMismatch("jet and Jacobi matrix differ in dimension");
  std::vector<Scalar> out(n_ + 1);
  for (std::size_t A = 0; A <= n_; ++A) {
    if (psi[A].is_zero()) continue;
    for (std::size_t B = 0; B <= n_; ++B)
      if (!M_[A][B].is_zero()) out[B] += psi[A] * M_[A][B];
  }
  return derivation_from_components(out);
}

Scalar jacobi_bracket(const JacobiMatrix& J, const Scalar& f, const Scalar& g) {
  const std::size_t n = J.dim();
  return jet_pairing(J.sharp(jet_prolong(f, n)), jet_prolong(g, n));
}

std::vector<Scalar> poisson_sharp(const SMat& pi, const std::vector<Scalar>& eta) {
  const std::size_t n = eta.size();
  std::vector<Scalar> X(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (eta[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!pi[i][j].is_zero()) X[j] += eta[i] * pi[i][j];
  }
  return X;
}

SMat lie_derivative_bivector(const std::vector<Scalar>& Z, const SMat& pi) {
  const std::size_t n = Z.size();
  SMat out = zero_smat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar s = vector_apply(Z, pi[i][j]);
      for (std::size_t k = 0; k < n; ++k) {
        const int kk = static_cast<int>(k);
        if (!pi[k][j].is_zero()) s -= pi[k][j] * differentiate(Z[i], kk, n);
        if (!pi[i][k].is_zero()) s -= pi[i][k] * differentiate(Z[j], kk, n);
      }
      out[i][j] = s;
    }
  return out;
}

OmniSection combination(const StructureFrame& F, const std::vector<Scalar>& c) {
  if (c.size() != F.rank()) throw Error("coefficient count differs from frame rank");
  OmniSection s = OmniSection::zero(F.dim());
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) s = s + c[k] * F.gens[k];
  return s;
}

StructureFrame from_two_cocycle(const ChartPtr& chart, const LForm& omega) {
  const std::size_t n = chart->dim();
  if (omega.dim() != n || omega.degree() != 2) throw ChartMismatch("2-cochain on a different chart");
  StructureFrame F{chart, {}, "cocycle"};
  for (std::size_t A = 0; A <= n; ++A) {
    Derivation e = Derivation::frame(n, A);
    F.gens.push_back({e, contract(e, omega).to_jet()});
  }
  return F;
}

StructureFrame from_jacobi(const ChartPtr& chart, const JacobiMatrix& J) {
  const std::size_t n = chart->dim();
  if (J.dim() != n) throw ChartMismatch("Jacobi matrix on a different chart");
  StructureFrame F{chart, {}, "jacobi"};
  for (std::size_t A = 0; A <= n; ++A) {
    Jet1 e = Jet1::frame(n, A);
    F.gens.push_back({J.sharp(e), e});
  }
  return F;
}

namespace {
void require_flat(const ChartPtr& chart, const std::vector<Scalar>& Gamma, const Oracle& o) {
  const std::size_t n = chart->dim();
  if (Gamma.size() != n) throw ChartMismatch("connection on a different chart");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Scalar curv = differentiate(Gamma[i], static_cast<int>(j), n) - differentiate(Gamma[j], static_cast<int>(i), n);
      auto v = scalars_equal(curv, Scalar(), *chart, o);
      if (!v.equal)
        throw WitnessError("connection is not flat: curvature (" + chart->name(i) + "," + chart->name(j) + ")",
                           v.witness, v.lhs);
    }
}
}  // namespace

StructureFrame from_flat_connection(const ChartPtr& chart, const std::vector<Scalar>& Gamma, const Oracle& o) {
  StructureFrame F = from_lcps(chart, Gamma, zero_smat(chart->dim(), chart->dim()), o);
  F.label = "flat_connection";
  return F;
}

StructureFrame unit_structure(const ChartPtr& chart) {
  const std::size_t n = chart->dim();
  StructureFrame F{chart, {{Derivation::one(n), Jet1::zero(n)}}, "unit"};
  for (std::size_t i = 0; i < n; ++i) F.gens.push_back({Derivation::zero(n), Jet1::frame(n, i)});
  return F;
}

StructureFrame from_lcps(const ChartPtr& chart, const std::vector<Scalar>& Gamma, const SMat& omega_bar,
                         const Oracle& o) {
  require_flat(chart, Gamma, o);
  const std::size_t n = chart->dim();
  if (omega_bar.size() != n) throw ChartMismatch("2-form on a different chart");
  StructureFrame F{chart, {}, "lcps"};
  for (std::size_t i = 0; i < n; ++i) {
    Derivation nabla = Derivation::delta(n, i);
    nabla.a = Gamma[i];
    Jet1 psi = Jet1::zero(n);
    for (std::size_t j = 0; j < n; ++j) psi.eta[j] = omega_bar[i][j];
    F.gens.push_back({nabla, psi});
  }
  Jet1 v0 = Jet1::zero(n);
  for (std::size_t i = 0; i < n; ++i) v0.eta[i] = -Gamma[i];
  v0.g = 1;
  F.gens.push_back({Derivation::zero(n), v0});
  return F;
}

StructureFrame from_homogeneous_poisson(const ChartPtr& chart, const HomogeneousPoissonData& d) {
  const std::size_t n = chart->dim();
  if (d.Z.size() != n || d.pi.size() != n) throw ChartMismatch("homogeneous Poisson data on a different chart");
  StructureFrame F{chart, {}, "homogeneous_poisson"};
  Derivation e = Derivation::one(n);
  for (std::size_t i = 0; i < n; ++i) e.X[i] = -d.Z[i];
  F.gens.push_back({e, Jet1::zero(n)});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Scalar> eta(n);
    eta[i] = 1;
    F.gens.push_back({Derivation(poisson_sharp(d.pi, eta), Scalar()), Jet1(eta, d.Z[i])});
  }
  return F;
}

StructureFrame lift_dirac(const ChartPtr& chart, const std::vector<TangentSection>& dirac, const Oracle& o) {
  const std::size_t n = chart->dim();
  TangentVerdict v = classify_tangent(TangentFrame{chart, dirac}, o);
  if (!v.dirac) {
    Witness w = v.witnesses.empty() ? Witness{"not maximal", {}, {}, 0.0} : v.witnesses.front();
    throw WitnessError("input is not a Dirac structure: " + w.kind, w.point, w.value);
  }
  StructureFrame F{chart, {}, "dirac"};
  for (const auto& s : dirac) F.gens.push_back({Derivation(s.X, Scalar()), Jet1(s.alpha, Scalar())});
  Jet1 unit = Jet1::zero(n);
  unit.g = 1;
  F.gens.push_back({Derivation::zero(n), unit});
  return F;
}

StructureFrame gauge_transform(const StructureFrame& F, const LForm& omega) {
  if (omega.dim() != F.dim() || omega.degree() != 2) throw ChartMismatch("2-cochain on a different chart");
  StructureFrame G{F.chart, {}, F.label + "+gauge"};
  for (const auto& g : F.gens) G.gens.push_back({g.D, g.psi + contract(g.D, omega).to_jet()});
  return G;
}

std::string Recognition::tag() const {
  if (cocycle) return "cocycle";
  if (jacobi) return "jacobi";
  if (homogeneous_poisson) return "homogeneous_poisson";
  return "unclassified";
}

namespace {

SMat component_matrix(const StructureFrame& F, bool derivation_part) {
  const std::size_t n1 = F.dim() + 1;
  SMat M = zero_smat(n1, F.rank());
  for (std::size_t k = 0; k < F.rank(); ++k)
    for (std::size_t A = 0; A < n1; ++A) M[A][k] = derivation_part ? F.gens[k].D[A] : F.gens[k].psi[A];
  return M;
}

}  // namespace

Recognition recognize(const StructureFrame& F, const Oracle& o) {
  Recognition r;
  const std::size_t n = F.dim(), n1 = n + 1, m = F.rank();
  auto pts = o.points(*F.chart);
  auto Ms = F.matrices(pts, o.atol);
  bool all_a = true, all_b = true, all_c = true;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    Mat Dm = derivation_rows(Ms[p]), Jm = jet_rows(Ms[p]);
    RankRow row;
    row.point = pts[p];
    Mat kerD = nullspace(Dm, o.atol), kerJ = nullspace(Jm, o.atol);
    row.cap_jet = kerD.cols();
    row.cap_der = kerJ.cols();
    if (kerJ.cols() > 0) {
      Mat E = Dm * kerJ;
      row.tau = rank(E.select_rows({n}), o.atol);
    }
    r.table.push_back(row);
    all_a = all_a && row.cap_jet == 0;
    all_b = all_b && row.cap_der == 0;
    all_c = all_c && row.cap_der == 1 && row.tau == 1;
  }
  if (m != n1) return r;
  const Chart& chart = *F.chart;
  if (all_a) {
    // Columns of P are the derivation parts; omega_{AB} = sum_k Pinv_{kA} psi_k[B].
    SMat Pinv = inverse(component_matrix(F, true), chart, o);
    SMat W = zero_smat(n1, n1);
    for (std::size_t A = 0; A < n1; ++A)
      for (std::size_t B = 0; B < n1; ++B)
        for (std::size_t k = 0; k < m; ++k)
          if (!Pinv[k][A].is_zero() && !F.gens[k].psi[B].is_zero()) W[A][B] += Pinv[k][A] * F.gens[k].psi[B];
    r.cocycle = true;
    r.omega = LForm::from_matrix(W);
  }
  if (all_b) {
    SMat Qinv = inverse(component_matrix(F, false), chart, o);
    SMat W = zero_smat(n1, n1);
    for (std::size_t A = 0; A < n1; ++A)
      for (std::size_t B = 0; B < n1; ++B)
        for (std::size_t k = 0; k < m; ++k)
          if (!Qinv[k][A].is_zero() && !F.gens[k].D[B].is_zero()) W[A][B] += Qinv[k][A] * F.gens[k].D[B];
    r.jacobi = true;
    r.J = JacobiMatrix::from_matrix(W);
  }
  if (all_c) {
    // Rows: jet eta-components then the 1-coefficient of the derivation part.
    SMat R = zero_smat(n1, m);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) R[i][k] = F.gens[k].psi.eta[i];
      R[n][k] = F.gens[k].D.a;
    }
    SMat Rinv = inverse(R, chart, o);
    auto column = [&](std::size_t j) {
      std::vector<Scalar> c(m);
      for (std::size_t k = 0; k < m; ++k) c[k] = Rinv[k][j];
      return combination(F, c);
    };
    HomogeneousPoissonData hp{zero_smat(n, n), std::vector<Scalar>(n)};
    OmniSection e = column(n);
    for (std::size_t i = 0; i < n; ++i) hp.Z[i] = -e.D.X[i];
    for (std::size_t i = 0; i < n; ++i) {
      OmniSection s = column(i);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) hp.pi[i][j] = s.D.X[j];
    }
    r.homogeneous_poisson = true;
    r.hp = hp;
  }
  return r;
}

bool same_structure(const StructureFrame& A, const StructureFrame& B, const Oracle& o, Witness* w) {
  if (A.dim() != B.dim()) throw ChartMismatch("frames on charts of different dimension");
  auto pts = o.points(*A.chart);
  auto MA = A.matrices(pts, o.atol);
  auto MB = B.matrices(pts, o.atol);
  for (std::size_t p = 0; p < pts.size(); ++p)
    if (!same_span(MA[p], MB[p], o.atol)) {
      if (w) *w = Witness{"spans differ", pts[p], {}, 0.0};
      return false;
    }
  return true;
}

}  // namespace omni

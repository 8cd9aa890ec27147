#include "omni/omni_algebroid.hpp"

namespace omni {

std::vector<Scalar> OmniSection::components() const {
  std::vector<Scalar> c = D.components();
  auto j = psi.components();
  c.insert(c.end(), j.begin(), j.end());
  return c;
}

OmniSection operator+(const OmniSection& a, const OmniSection& b) { return {a.D + b.D, a.psi + b.psi}; }
OmniSection operator-(const OmniSection& a, const OmniSection& b) { return {a.D - b.D, a.psi - b.psi}; }
OmniSection operator*(const Scalar& f, const OmniSection& a) { return {f * a.D, f * a.psi}; }

Scalar omni_pairing(const OmniSection& a, const OmniSection& b) {
  return jet_pairing(a.D, b.psi) + jet_pairing(b.D, a.psi);
}

OmniSection dorfman(const OmniSection& a, const OmniSection& b) {
  LForm phi = LForm::from_jet(a.psi);
  LForm psi = LForm::from_jet(b.psi);
  LForm jet = lie_derivative(a.D, psi) - contract(b.D, d_D(phi));
  return {commutator(a.D, b.D), jet.to_jet()};
}

std::vector<Mat> StructureFrame::matrices(const std::vector<std::vector<double>>& pts, double atol) const {
  const std::size_t rows = 2 * (dim() + 1);
  std::vector<Mat> out(pts.size(), Mat(rows, gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].dim() != dim()) throw ChartMismatch("frame element on a chart of different dimension");
    auto comps = gens[k].components();
    for (std::size_t r = 0; r < rows; ++r) {
      if (comps[r].is_zero()) continue;
      auto vals = evaluate_batch(comps[r], pts, atol);
      for (std::size_t p = 0; p < pts.size(); ++p) out[p](r, k) = vals[p];
    }
  }
  return out;
}

Mat StructureFrame::matrix(const std::vector<double>& p, double atol) const { return matrices({p}, atol)[0]; }

Mat derivation_rows(const Mat& M) {
  std::vector<std::size_t> idx(M.rows() / 2);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return M.select_rows(idx);
}

Mat jet_rows(const Mat& M) {
  std::vector<std::size_t> idx(M.rows() / 2);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = M.rows() / 2 + i;
  return M.select_rows(idx);
}

bool frame_condition(const StructureFrame& F, const Oracle& o, Witness* w) {
  auto pts = o.points(*F.chart);
  auto Ms = F.matrices(pts, o.atol);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    std::size_t r = rank(Ms[p], o.atol);
    if (r != F.rank()) {
      if (w) *w = Witness{"frame rank deficient", pts[p], {}, static_cast<double>(r)};
      return false;
    }
  }
  return true;
}

bool section_in_span(const StructureFrame& F, const OmniSection& s, const std::vector<std::vector<double>>& pts,
                     double atol, Witness* w) {
  auto Ms = F.matrices(pts, atol);
  auto comps = s.components();
  for (std::size_t p = 0; p < pts.size(); ++p) {
    std::vector<double> v(comps.size());
    for (std::size_t r = 0; r < comps.size(); ++r) v[r] = comps[r].is_zero() ? 0.0 : evaluate(comps[r], pts[p], atol);
    if (!in_span(Ms[p], v, atol)) {
      if (w) *w = Witness{"section not in frame span", pts[p], {}, 0.0};
      return false;
    }
  }
  return true;
}

Scalar courant_jacobi_value(const OmniSection& a, const OmniSection& b, const OmniSection& c) {
  return omni_pairing(dorfman(a, b), c);
}

namespace {

bool isotropy(const StructureFrame& F, const std::vector<std::vector<double>>& pts, const Oracle& o, Witness* w) {
  for (std::size_t i = 0; i < F.rank(); ++i)
    for (std::size_t j = i; j < F.rank(); ++j) {
      Scalar v = omni_pairing(F.gens[i], F.gens[j]);
      auto eq = scalars_equal_at(v, Scalar(), pts, o);
      if (!eq.equal) {
        if (w) *w = Witness{"pairing nonzero", eq.witness, {static_cast<int>(i), static_cast<int>(j)}, eq.lhs};
        return false;
      }
    }
  return true;
}

}  // namespace

Scalar courant_jacobi_tensor(const StructureFrame& F, std::size_t i, std::size_t j, std::size_t k, const Oracle& o) {
  if (i >= F.rank() || j >= F.rank() || k >= F.rank()) throw Error("frame index out of range");
  Witness w;
  if (!isotropy(F, o.points(*F.chart), o, &w)) throw WitnessError("frame is not isotropic", w.point, w.value);
  return courant_jacobi_value(F.gens[i], F.gens[j], F.gens[k]);
}

Classification classify_subbundle(const StructureFrame& F, const Oracle& o) {
  Classification c;
  Witness w;
  c.frame_ok = frame_condition(F, o, &w);
  if (!c.frame_ok) {
    c.witnesses.push_back(w);
    return c;
  }
  auto pts = o.points(*F.chart);
  c.isotropic = isotropy(F, pts, o, &w);
  if (!c.isotropic) c.witnesses.push_back(w);
  c.maximal = c.isotropic && F.rank() == F.dim() + 1;
  if (c.isotropic && !c.maximal)
    c.witnesses.push_back(Witness{"rank differs from n+1", {}, {}, static_cast<double>(F.rank())});
  c.involutive = true;
  const std::size_t m = F.rank();
  for (std::size_t i = 0; i < m && c.involutive; ++i)
    for (std::size_t j = 0; j < m && c.involutive; ++j) {
      OmniSection br = dorfman(F.gens[i], F.gens[j]);
      for (std::size_t k = 0; k < m; ++k) {
        auto eq = scalars_equal_at(omni_pairing(br, F.gens[k]), Scalar(), pts, o);
        if (!eq.equal) {
          c.involutive = false;
          c.witnesses.push_back(Witness{"Courant-Jacobi tensor nonzero",
                                        eq.witness,
                                        {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)},
                                        eq.lhs});
          break;
        }
      }
    }
  c.dirac_jacobi = c.isotropic && c.maximal && c.involutive;
  return c;
}

namespace {
Mat annihilator(const Mat& V, std::size_t n1, double tol) {
  if (V.cols() == 0) return Mat::identity(n1);
  return nullspace(V.transpose(), tol);
}
}  // namespace

bool characteristic_equalities(const StructureFrame& F, const Oracle& o, Witness* w) {
  auto pts = o.points(*F.chart);
  auto Ms = F.matrices(pts, o.atol);
  const std::size_t n1 = F.dim() + 1;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    Mat Dm = derivation_rows(Ms[p]);
    Mat Jm = jet_rows(Ms[p]);
    Mat kerD = nullspace(Dm, o.atol);
    Mat LcapJ = kerD.cols() ? column_basis(Jm * kerD, o.atol) : Mat(n1, 0);
    Mat ann_prD = annihilator(column_basis(Dm, o.atol), n1, o.atol);
    if (!same_span(ann_prD, LcapJ, o.atol)) {
      if (w) *w = Witness{"pr_D(L)^0 differs from L cap J1L", pts[p], {}, 0.0};
      return false;
    }
    Mat kerJ = nullspace(Jm, o.atol);
    Mat LcapD = kerJ.cols() ? column_basis(Dm * kerJ, o.atol) : Mat(n1, 0);
    Mat ann_LcapD = annihilator(LcapD, n1, o.atol);
    if (!same_span(column_basis(Jm, o.atol), ann_LcapD, o.atol)) {
      if (w) *w = Witness{"pr_J(L) differs from (L cap DL)^0", pts[p], {}, 0.0};
      return false;
    }
  }
  return true;
}

}  // namespace omni

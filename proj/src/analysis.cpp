#include "omni/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace omni {

namespace {

double residual_tol(double atol) { return std::max(atol * 1e3, 1e-12); }

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> r;
  for (std::size_t i = lo; i < hi; ++i) r.push_back(i);
  return r;
}

Mat checked_matrix(const StructureFrame& F, const std::vector<double>& p, double atol) {
  Mat M = F.matrix(p, atol);
  std::size_t r = rank(M, atol);
  if (r != F.rank()) throw WitnessError("frame rank deficient at point", p, static_cast<double>(r));
  return M;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> jet_of(const Scalar& f, const std::vector<double>& p, double atol, bool with_value) {
  const std::size_t n = p.size();
  std::vector<double> v(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i] = evaluate(differentiate(f, static_cast<int>(i), n), p, atol);
  if (with_value) v[n] = evaluate(f, p, atol);
  return v;
}

Mat null_der(const Mat& Dm, const Mat& Jm, double atol) {
  Mat kerJ = nullspace(Jm, atol);
  if (kerJ.cols() == 0) return Mat(Dm.rows(), 0);
  return column_basis(Dm * kerJ, atol);
}

}  // namespace

Mat leaf_form_at(const StructureFrame& F, const std::vector<double>& p, double atol, bool shifted) {
  Mat M = checked_matrix(F, p, atol);
  Mat Dm = derivation_rows(M), Jm = jet_rows(M);
  Mat B = column_basis(Dm, atol);
  Mat kerD = nullspace(Dm, atol);
  const std::size_t r = B.cols();
  std::vector<std::vector<double>> partners(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<double> c;
    solve(Dm, B.column(i), c, atol);
    if (shifted)
      for (std::size_t j = 0; j < kerD.cols(); ++j)
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += static_cast<double>(i + j + 1) * kerD(k, j);
    partners[i] = Jm * c;
  }
  Mat W(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) W(i, j) = dot(B.column(j), partners[i]);
  return W;
}

PointReport point_report(const StructureFrame& F, const std::vector<double>& p, double atol) {
  const std::size_t n = F.dim();
  Mat M = checked_matrix(F, p, atol);
  Mat Dm = derivation_rows(M), Jm = jet_rows(M);
  PointReport r;
  r.point = p;
  r.I_basis = column_basis(Dm, atol);
  r.sigma_I_basis = column_basis(r.I_basis.select_rows(range(0, n)), atol);
  r.E_basis = null_der(Dm, Jm, atol);
  r.K_basis = column_basis(r.E_basis.select_rows(range(0, n)), atol);
  r.rank_I = r.I_basis.cols();
  r.rank_sigma_I = r.sigma_I_basis.cols();
  r.rank_E = r.E_basis.cols();
  r.rank_K = r.K_basis.cols();
  r.precontact = r.rank_I == r.rank_sigma_I + 1;
  std::vector<double> unit(2 * n + 2, 0.0);
  unit[n] = 1.0;
  r.unit_in_L = in_span(M, unit, atol);
  r.leaf_form = leaf_form_at(F, p, atol);
  return r;
}

CheckVerdict reconstruction_check(const StructureFrame& F, const Oracle& o) {
  CheckVerdict v;
  const std::size_t n1 = F.dim() + 1;
  const double tol = residual_tol(o.atol);
  for (const auto& p : o.points(*F.chart)) {
    Mat M = F.matrix(p, o.atol);
    if (rank(M, o.atol) != F.rank()) {
      v.fail(Witness{"frame rank deficient", p, {}, 0.0});
      break;
    }
    Mat Dm = derivation_rows(M), Jm = jet_rows(M);
    Mat B = column_basis(Dm, o.atol);
    Mat W = leaf_form_at(F, p, o.atol), W2 = leaf_form_at(F, p, o.atol, true);
    const std::size_t r = B.cols();
    bool bad = false;
    for (std::size_t i = 0; i < r && !bad; ++i)
      for (std::size_t j = 0; j < r && !bad; ++j) {
        if (std::abs(W(i, j) + W(j, i)) > tol) {
          v.fail(Witness{"leaf form not skew", p, {static_cast<int>(i), static_cast<int>(j)}, W(i, j) + W(j, i)});
          bad = true;
        } else if (std::abs(W(i, j) - W2(i, j)) > tol) {
          v.fail(Witness{"leaf form depends on the jet partner", p, {static_cast<int>(i), static_cast<int>(j)},
                         W(i, j) - W2(i, j)});
          bad = true;
        }
      }
    if (bad) break;
    for (std::size_t k = 0; k < F.rank() && !bad; ++k) {
      std::vector<double> t;
      solve(B, Dm.column(k), t, o.atol);
      auto psi = Jm.column(k);
      for (std::size_t s = 0; s < r; ++s) {
        double lhs = 0.0;
        for (std::size_t i = 0; i < r; ++i) lhs += t[i] * W(i, s);
        double rhs = dot(B.column(s), psi);
        if (std::abs(lhs - rhs) > tol) {
          v.fail(Witness{"i_D omega differs from psi on I", p, {static_cast<int>(k), static_cast<int>(s)}, lhs - rhs});
          bad = true;
          break;
        }
      }
    }
    if (bad) break;
    // Solution space of i_D omega = psi|_I, unknowns (t, psi).
    Mat sys(r, r + n1);
    for (std::size_t s = 0; s < r; ++s) {
      for (std::size_t i = 0; i < r; ++i) sys(s, i) = W(i, s);
      for (std::size_t A = 0; A < n1; ++A) sys(s, r + A) = -B(A, s);
    }
    Mat N = nullspace(sys, o.atol);
    Mat sol(2 * n1, N.cols());
    for (std::size_t j = 0; j < N.cols(); ++j) {
      for (std::size_t A = 0; A < n1; ++A) {
        double d = 0.0;
        for (std::size_t i = 0; i < r; ++i) d += B(A, i) * N(i, j);
        sol(A, j) = d;
        sol(n1 + A, j) = N(r + A, j);
      }
    }
    if (N.cols() != n1 || !same_span(sol, M, std::sqrt(o.atol))) {
      v.fail(Witness{"reconstructed subspace differs", p, {}, static_cast<double>(N.cols())});
      break;
    }
  }
  if (!v.ok) v.detail = "reconstruction from (I, omega) fails";
  return v;
}

AdmissibilityVerdict is_admissible_section(const StructureFrame& F, const Scalar& f, const Oracle& o,
                                           const Derivation* hamiltonian) {
  AdmissibilityVerdict v;
  const double tol = residual_tol(o.atol);
  auto pts = o.points(*F.chart);
  if (hamiltonian) v.hamiltonian_ok = true;
  for (const auto& p : pts) {
    Mat M = F.matrix(p, o.atol);
    Mat Dm = derivation_rows(M), Jm = jet_rows(M);
    auto j = jet_of(f, p, o.atol, true);
    bool member = in_span(Jm, j, o.atol);
    Mat E = null_der(Dm, Jm, o.atol);
    bool null_ok = true;
    for (std::size_t c = 0; c < E.cols(); ++c)
      if (std::abs(dot(E.column(c), j)) > tol) null_ok = false;
    if (!member && v.membership) v.witnesses.push_back(Witness{"j1 f not in pr_J(L)", p, {}, 0.0});
    v.membership = v.membership && member;
    v.null_test = v.null_test && null_ok;
    if (member != null_ok) {
      v.agree = false;
      v.witnesses.push_back(Witness{"membership and null test disagree", p, {}, 0.0});
    }
    if (hamiltonian && *v.hamiltonian_ok) {
      auto d = evaluate(*hamiltonian, p, o.atol);
      d.insert(d.end(), j.begin(), j.end());
      if (!in_span(M, d, o.atol)) {
        v.hamiltonian_ok = false;
        v.witnesses.push_back(Witness{"(D, j1 f) not in L", p, {}, 0.0});
      }
    }
  }
  return v;
}

AdmissibilityVerdict is_admissible_function(const StructureFrame& F, const Scalar& f, const Oracle& o) {
  AdmissibilityVerdict v;
  const std::size_t n = F.dim();
  const double tol = residual_tol(o.atol);
  for (const auto& p : o.points(*F.chart)) {
    Mat M = F.matrix(p, o.atol);
    Mat Dm = derivation_rows(M), Jm = jet_rows(M);
    auto j = jet_of(f, p, o.atol, false);
    bool member = in_span(Jm, j, o.atol);
    Mat K = column_basis(null_der(Dm, Jm, o.atol).select_rows(range(0, n)), o.atol);
    std::vector<double> df(j.begin(), j.begin() + static_cast<long>(n));
    bool null_ok = true;
    for (std::size_t c = 0; c < K.cols(); ++c)
      if (std::abs(dot(K.column(c), df)) > tol) null_ok = false;
    if (!member && v.membership) v.witnesses.push_back(Witness{"(df, 0) not in pr_J(L)", p, {}, 0.0});
    v.membership = v.membership && member;
    v.null_test = v.null_test && null_ok;
    if (member != null_ok) {
      v.agree = false;
      v.witnesses.push_back(Witness{"membership and null test disagree", p, {}, 0.0});
    }
  }
  return v;
}

Derivation hamiltonian_derivation(const StructureFrame& F, const Scalar& f, const Oracle& o) {
  const std::size_t n1 = F.dim() + 1, m = F.rank();
  if (m != n1) throw Error("Hamiltonian derivation needs a frame of rank dim + 1");
  SMat Q = zero_smat(n1, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t A = 0; A < n1; ++A) Q[A][k] = F.gens[k].psi[A];
  SMat Qinv = inverse(Q, *F.chart, o);
  Jet1 j = jet_prolong(f, F.dim());
  std::vector<Scalar> c(m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t A = 0; A < n1; ++A)
      if (!Qinv[k][A].is_zero() && !j[A].is_zero()) c[k] += Qinv[k][A] * j[A];
  return combination(F, c).D;
}

Scalar admissible_bracket(const StructureFrame& F, const Scalar& f, const Derivation& Df, const Scalar& g,
                          const Oracle& o) {
  Witness w;
  if (!section_in_span(F, OmniSection(Df, jet_prolong(f, F.dim())), o.points(*F.chart), o.atol, &w))
    throw WitnessError("Hamiltonian witness is not in the structure", w.point, 0.0);
  return apply_derivation(Df, g);
}

double transverse_bracket_at(const StructureFrame& F, const std::vector<double>& p, const std::vector<double>& phi,
                             const std::vector<double>& psi, double atol) {
  Mat M = F.matrix(p, atol);
  Mat Dm = derivation_rows(M), Jm = jet_rows(M);
  std::vector<double> c;
  if (!solve(Jm, phi, c, atol)) throw WitnessError("first jet not in pr_J(L)", p, 0.0);
  if (!in_span(Jm, psi, atol)) throw WitnessError("second jet not in pr_J(L)", p, 0.0);
  return dot(Dm * c, psi);
}

Normalization normalize_frame_at_point(const StructureFrame& F, const std::vector<double>& p, double atol) {
  const std::size_t n = F.dim(), n1 = n + 1;
  PointReport rep = point_report(F, p, atol);
  Normalization out;
  out.case_tag = rep.tag();
  out.leaf_dim = rep.rank_sigma_I;
  if (F.rank() != n1) {
    out.message = "frame rank differs from dim + 1";
    return out;
  }
  std::vector<std::size_t> leaf;
  if (rep.rank_sigma_I > 0) leaf = rref(rep.sigma_I_basis.transpose(), atol).pivots;
  std::vector<bool> in_x(n1, false);
  for (auto i : leaf) in_x[i] = true;
  if (rep.precontact) in_x[n] = true;
  for (std::size_t A = 0; A < n1; ++A) (in_x[A] ? out.x_slots : out.y_slots).push_back(A);
  const std::size_t nx = out.x_slots.size(), ny = out.y_slots.size();

  // Column order [D x | J y | D y | J x]: alpha rows pivot on D x, beta rows on J y.
  std::vector<std::size_t> order;
  for (auto A : out.x_slots) order.push_back(A);
  for (auto A : out.y_slots) order.push_back(n1 + A);
  for (auto A : out.y_slots) order.push_back(A);
  for (auto A : out.x_slots) order.push_back(n1 + A);
  Mat M = F.matrix(p, atol);
  Rref R = rref(M.transpose().select_cols(order), atol);
  bool pivots_ok = R.rank() == n1;
  for (std::size_t i = 0; i < R.rank() && pivots_ok; ++i) pivots_ok = R.pivots[i] == i;
  if (!pivots_ok) {
    out.message = "pivot failure: point too degenerate for this frame ordering";
    return out;
  }
  out.E = Mat(nx, ny);
  out.F = Mat(nx, nx);
  out.G = Mat(ny, ny);
  out.H = Mat(ny, nx);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t a = 0; a < ny; ++a) out.E(i, a) = R.R(i, n1 + a);
    for (std::size_t j = 0; j < nx; ++j) out.F(i, j) = R.R(i, n1 + ny + j);
  }
  for (std::size_t a = 0; a < ny; ++a) {
    for (std::size_t b = 0; b < ny; ++b) out.G(a, b) = R.R(nx + a, n1 + b);
    for (std::size_t j = 0; j < nx; ++j) out.H(a, j) = R.R(nx + a, n1 + ny + j);
  }
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j) out.residual_F = std::max(out.residual_F, std::abs(out.F(i, j) + out.F(j, i)));
  for (std::size_t a = 0; a < ny; ++a)
    for (std::size_t b = 0; b < ny; ++b) out.residual_G = std::max(out.residual_G, std::abs(out.G(a, b) + out.G(b, a)));
  for (std::size_t a = 0; a < ny; ++a)
    for (std::size_t i = 0; i < nx; ++i) out.residual_HE = std::max(out.residual_HE, std::abs(out.H(a, i) + out.E(i, a)));
  const double tol = residual_tol(atol);
  out.ok = out.residual_F <= tol && out.residual_G <= tol && out.residual_HE <= tol;
  out.message = out.ok ? "normal form blocks satisfy the isotropy relations" : "isotropy relations fail";
  return out;
}

TransverseStructure transverse_structure_at(const StructureFrame& F, const CoordinateSlice& slice,
                                            const std::vector<double>& free_point, const Oracle& o) {
  const std::size_t n = F.dim();
  TransverseStructure out;
  std::vector<double> p(n, 0.0);
  std::vector<bool> fixed(n, false);
  for (std::size_t k = 0; k < slice.fixed.size(); ++k) {
    p[slice.fixed[k]] = slice.values[k].get_d();
    fixed[slice.fixed[k]] = true;
  }
  std::vector<std::size_t> free;
  for (std::size_t i = 0, j = 0; i < n; ++i)
    if (!fixed[i]) {
      if (j >= free_point.size()) throw ChartMismatch("free point has too few coordinates");
      p[i] = free_point[j++];
      free.push_back(i);
    }
  PointReport rep = point_report(F, p, o.atol);
  out.expected = rep.precontact ? "homogeneous_poisson" : "jacobi";

  // T_pM = T_p(leaf) (+) T_p(slice).
  Mat T = rep.sigma_I_basis;
  for (auto i : free) {
    Mat e(n, 1);
    e(i, 0) = 1.0;
    T = T.cols() ? T.hcat(e) : e;
  }
  if (free.size() + rep.rank_sigma_I != n || rank(T, o.atol) != n) {
    out.verdict.fail(Witness{"slice is not transverse to the leaf", p, {}, static_cast<double>(rep.rank_sigma_I)});
    out.verdict.detail = "slice is not a complement of the leaf tangent space";
    return out;
  }
  out.slice = backward_image_slice(F, slice, o);
  out.recognition = recognize(out.slice.frame, o);
  const double tol = residual_tol(o.atol);
  auto small = [&](const Scalar& s) { return s.is_zero() || std::abs(evaluate(s, free_point, o.atol)) <= tol; };
  bool matched = false;
  if (out.expected == "jacobi" && out.recognition.jacobi) {
    matched = true;
    out.vanishes_at_point = true;
    for (const auto& row : out.recognition.J->matrix())
      for (const auto& e : row) out.vanishes_at_point = out.vanishes_at_point && small(e);
  } else if (out.expected == "homogeneous_poisson" && out.recognition.homogeneous_poisson) {
    matched = true;
    out.vanishes_at_point = true;
    for (const auto& row : out.recognition.hp->pi)
      for (const auto& e : row) out.vanishes_at_point = out.vanishes_at_point && small(e);
    for (const auto& z : out.recognition.hp->Z) out.vanishes_at_point = out.vanishes_at_point && small(z);
  }
  if (!matched) {
    out.verdict.fail(Witness{"transverse structure not of the expected class", p, {}, 0.0});
    out.verdict.detail = "expected " + out.expected + ", recognized " + out.recognition.tag();
  } else if (!out.vanishes_at_point) {
    out.verdict.fail(Witness{"transverse structure does not vanish at the point", p, {}, 0.0});
    out.verdict.detail = "transverse structure nonzero at the base point";
  }
  return out;
}

CheckVerdict parity_check(const StructureFrame& F, const std::vector<std::vector<double>>& pts, double atol) {
  CheckVerdict v;
  int parity[2] = {-1, -1};
  for (const auto& p : pts) {
    PointReport r = point_report(F, p, atol);
    int& slot = parity[r.precontact ? 1 : 0];
    int par = static_cast<int>(r.rank_sigma_I % 2);
    if (slot < 0)
      slot = par;
    else if (slot != par)
      v.fail(Witness{std::string("leaf dimension parity changes among ") + r.tag() + " points", p, {},
                     static_cast<double>(r.rank_sigma_I)});
  }
  if (!v.ok) v.detail = "parity of leaf dimension is not constant";
  return v;
}

CheckVerdict dichotomy_check(const StructureFrame& F, const std::vector<std::vector<double>>& pts, double atol) {
  CheckVerdict v;
  for (const auto& p : pts) {
    PointReport r = point_report(F, p, atol);
    std::size_t expect = r.rank_K + (r.unit_in_L ? 1 : 0);
    if (r.rank_E != expect)
      v.fail(Witness{"rank E differs from rank K + [1 in L]", p, {}, static_cast<double>(r.rank_E)});
  }
  if (!v.ok) v.detail = "null distribution dichotomy fails";
  return v;
}

std::vector<std::vector<double>> grid_points(const Chart& chart, std::size_t per_axis) {
  const std::size_t n = chart.dim();
  std::vector<std::vector<double>> axes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Domain& d = chart.domain(i);
    double total = d.total_length();
    for (std::size_t k = 0; k < per_axis; ++k) {
      double t = (static_cast<double>(k) + 0.5) / static_cast<double>(per_axis) * total;
      for (const auto& part : d.parts) {
        double len = part.hi - part.lo;
        if (t <= len || &part == &d.parts.back()) {
          axes[i].push_back(part.lo + std::min(t, len));
          break;
        }
        t -= len;
      }
    }
  }
  std::vector<std::vector<double>> pts{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<double>> next;
    for (const auto& p : pts)
      for (double v : axes[i]) {
        auto q = p;
        q.push_back(v);
        next.push_back(q);
      }
    pts = std::move(next);
  }
  return pts;
}

}  // namespace omni

#include "omni/morphisms.hpp"

#include <cmath>
#include <sstream>

namespace omni {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool vanishes_on(const Scalar& f, const std::vector<std::vector<double>>& pts, double atol) {
  if (f.is_zero()) return true;
  for (const auto& p : pts)
    if (std::abs(evaluate(f, p, atol)) > atol) return false;
  return true;
}

bool bounded_away(const Scalar& f, const std::vector<std::vector<double>>& pts, double atol) {
  if (f.is_zero()) return false;
  bool pos = false, neg = false;
  for (const auto& p : pts) {
    double v = evaluate(f, p, atol);
    if (std::abs(v) <= atol) return false;
    (v > 0 ? pos : neg) = true;
  }
  return !(pos && neg);
}

// Restricted 2(n+1) component vector of each generator.
using Components = std::vector<Scalar>;

Mat evaluate_columns(const std::vector<Components>& cols, const std::vector<double>& p, double atol) {
  std::size_t rows = cols.empty() ? 0 : cols[0].size();
  Mat M(rows, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (std::size_t r = 0; r < rows; ++r)
      if (!cols[k][r].is_zero()) M(r, k) = evaluate(cols[k][r], p, atol);
  return M;
}

}  // namespace

CoordinateSlice CoordinateSlice::parse(const std::string& text, const Chart& chart) {
  CoordinateSlice s;
  std::stringstream ss(text);
  std::string item;
  std::size_t offset = 0;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (t.empty()) {
      offset += item.size() + 1;
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("slice entry needs name=value: " + t, offset);
    std::string name = trim(t.substr(0, eq));
    int idx = chart.index_of(name);
    if (idx < 0) throw ParseError("unknown coordinate in slice: " + name, offset);
    Scalar v = parse_scalar(trim(t.substr(eq + 1)), chart);
    if (!v.is_const()) throw ParseError("slice value must be constant: " + t, offset);
    for (auto f : s.fixed)
      if (f == static_cast<std::size_t>(idx)) throw ParseError("coordinate fixed twice: " + name, offset);
    s.fixed.push_back(static_cast<std::size_t>(idx));
    s.values.push_back(v.value());
    offset += item.size() + 1;
  }
  return s;
}

namespace {
bool is_fixed(const CoordinateSlice& s, std::size_t i, mpq_class* value = nullptr) {
  for (std::size_t k = 0; k < s.fixed.size(); ++k)
    if (s.fixed[k] == i) {
      if (value) *value = s.values[k];
      return true;
    }
  return false;
}
}  // namespace

ChartPtr slice_chart(const Chart& chart, const CoordinateSlice& slice) {
  std::vector<std::string> names;
  std::vector<Domain> domains;
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    if (is_fixed(slice, i)) continue;
    names.push_back(chart.name(i));
    domains.push_back(chart.domain(i));
  }
  return make_chart(names, domains);
}

LineBundleMorphism slice_inclusion(const ChartPtr& chart, const ChartPtr& sub, const CoordinateSlice& slice) {
  LineBundleMorphism F;
  F.source = sub;
  F.target = chart;
  int j = 0;
  for (std::size_t i = 0; i < chart->dim(); ++i) {
    mpq_class v;
    if (is_fixed(slice, i, &v))
      F.base.push_back(Scalar::constant(v));
    else
      F.base.push_back(Scalar::var(j++));
  }
  F.c = Scalar(1L);
  return F;
}

SliceImage backward_image_slice(const StructureFrame& F, const CoordinateSlice& slice, const Oracle& o) {
  const std::size_t n = F.dim(), m = F.rank();
  for (auto i : slice.fixed)
    if (i >= n) throw ChartMismatch("slice coordinate outside the chart");
  ChartPtr sub = slice_chart(*F.chart, slice);
  SliceImage out;
  out.inclusion = slice_inclusion(F.chart, sub, slice);
  const std::vector<Scalar>& images = out.inclusion.base;

  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_fixed(slice, i)) free.push_back(i);
  const std::size_t k = free.size();

  // Generators restricted to the slice, as 2(n+1) components.
  std::vector<Components> gens(m);
  for (std::size_t g = 0; g < m; ++g)
    for (const auto& c : F.gens[g].components()) gens[g].push_back(c.is_zero() ? c : substitute(c, images));

  auto pts = o.points(*sub);

  // Clean intersection: rank of L cap (N*S (x) L) along the slice.
  std::vector<std::size_t> cap_rows;
  for (std::size_t A = 0; A <= n; ++A) cap_rows.push_back(A);
  for (auto i : free) cap_rows.push_back(n + 1 + i);
  cap_rows.push_back(2 * n + 1);
  for (const auto& p : pts) {
    Mat M = evaluate_columns(gens, p, o.atol);
    std::size_t r = nullspace(M.select_rows(cap_rows), o.atol).cols();
    out.clean_table.push_back(CleanRow{p, r});
  }
  for (const auto& row : out.clean_table)
    if (row.rank != out.clean_table.front().rank)
      throw WitnessError("clean intersection fails: rank of L cap N*S varies along the slice", row.point,
                         static_cast<double>(row.rank));

  // Tangency: symbol components along fixed coordinates vanish on the slice.
  SMat C;
  for (auto i : slice.fixed) {
    std::vector<Scalar> row(m);
    for (std::size_t g = 0; g < m; ++g) row[g] = gens[g][i];
    C.push_back(row);
  }
  std::vector<bool> row_done(C.size(), false), col_pivot(m, false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  while (true) {
    long pr = -1, pc = -1;
    for (std::size_t r = 0; r < C.size() && pr < 0; ++r) {
      if (row_done[r]) continue;
      for (std::size_t c = 0; c < m; ++c)
        if (!col_pivot[c] && C[r][c].is_const() && !C[r][c].is_zero()) {
          pr = static_cast<long>(r);
          pc = static_cast<long>(c);
          break;
        }
    }
    for (std::size_t r = 0; r < C.size() && pr < 0; ++r) {
      if (row_done[r]) continue;
      for (std::size_t c = 0; c < m; ++c)
        if (!col_pivot[c] && bounded_away(C[r][c], pts, o.atol)) {
          pr = static_cast<long>(r);
          pc = static_cast<long>(c);
          break;
        }
    }
    if (pr < 0) {
      for (std::size_t r = 0; r < C.size(); ++r) {
        if (row_done[r]) continue;
        for (std::size_t c = 0; c < m; ++c)
          if (!vanishes_on(C[r][c], pts, o.atol))
            throw WitnessError("elimination failure: no pivot stays away from zero on the slice",
                               pts.empty() ? std::vector<double>{} : pts.front(), static_cast<double>(r));
      }
      break;
    }
    const std::size_t R = static_cast<std::size_t>(pr), P = static_cast<std::size_t>(pc);
    Scalar piv = C[R][P];
    Scalar inv = piv.is_const() ? Scalar::constant(mpq_class(1) / piv.value()) : Scalar();
    for (std::size_t c = 0; c < m; ++c) {
      if (C[R][c].is_zero()) continue;
      C[R][c] = c == P ? Scalar(1L) : (piv.is_const() ? inv * C[R][c] : C[R][c] / piv);
    }
    for (std::size_t r = 0; r < C.size(); ++r) {
      if (r == R || C[r][P].is_zero()) continue;
      Scalar f = C[r][P];
      for (std::size_t c = 0; c < m; ++c)
        if (!C[R][c].is_zero()) C[r][c] = c == P ? Scalar() : C[r][c] - f * C[R][c];
    }
    row_done[R] = true;
    col_pivot[P] = true;
    pivots.emplace_back(R, P);
  }

  // Kernel of the tangency conditions, then restriction to the slice.
  std::vector<Components> candidates;
  for (std::size_t f = 0; f < m; ++f) {
    if (col_pivot[f]) continue;
    std::vector<Scalar> v(m);
    v[f] = Scalar(1L);
    for (auto [r, p] : pivots) v[p] = -C[r][f];
    Components s(2 * n + 2);
    for (std::size_t g = 0; g < m; ++g) {
      if (v[g].is_zero()) continue;
      for (std::size_t row = 0; row < s.size(); ++row)
        if (!gens[g][row].is_zero()) s[row] += v[g] * gens[g][row];
    }
    Components restricted;
    for (auto i : free) restricted.push_back(s[i]);
    restricted.push_back(s[n]);
    for (auto i : free) restricted.push_back(s[n + 1 + i]);
    restricted.push_back(s[2 * n + 1]);
    candidates.push_back(restricted);
  }

  // Keep generators that raise the pointwise rank everywhere.
  std::vector<Components> kept;
  std::vector<std::size_t> ranks(pts.size(), 0);
  for (const auto& cand : candidates) {
    std::vector<Components> trial = kept;
    trial.push_back(cand);
    bool raises = true;
    std::vector<std::size_t> new_ranks(pts.size());
    for (std::size_t p = 0; p < pts.size() && raises; ++p) {
      new_ranks[p] = rank(evaluate_columns(trial, pts[p], o.atol), o.atol);
      raises = new_ranks[p] > ranks[p];
    }
    if (raises) {
      kept = trial;
      ranks = new_ranks;
    }
  }
  if (kept.size() != k + 1)
    throw WitnessError("backward image does not have rank dim + 1 on the slice",
                       pts.empty() ? std::vector<double>{} : pts.front(), static_cast<double>(kept.size()));

  out.frame.chart = sub;
  out.frame.label = F.label.empty() ? "slice" : F.label + "|slice";
  for (const auto& c : kept) {
    std::vector<Scalar> dcomp(c.begin(), c.begin() + static_cast<long>(k + 1));
    std::vector<Scalar> jcomp(c.begin() + static_cast<long>(k + 1), c.end());
    out.frame.gens.emplace_back(derivation_from_components(dcomp), jet_from_components(jcomp));
  }
  return out;
}

StructureFrame backward_image_projection(const StructureFrame& base, const ChartPtr& total,
                                         const std::vector<std::size_t>& base_coords, const Scalar& c) {
  const std::size_t nb = base.dim(), n = total->dim();
  if (base_coords.size() != nb) throw ChartMismatch("one total coordinate is needed per base coordinate");
  std::vector<bool> is_base(n, false);
  for (auto i : base_coords) {
    if (i >= n || is_base[i]) throw ChartMismatch("invalid projection coordinates");
    is_base[i] = true;
  }
  LineBundleMorphism F;
  F.source = total;
  F.target = base.chart;
  for (auto i : base_coords) F.base.push_back(Scalar::var(static_cast<int>(i)));
  F.c = c;
  const bool const_c = c.is_const();

  StructureFrame out;
  out.chart = total;
  out.label = base.label.empty() ? "pullback" : base.label + "|pullback";
  for (const auto& g : base.gens) {
    Derivation D = Derivation::zero(n);
    for (std::size_t j = 0; j < nb; ++j)
      if (!g.D.X[j].is_zero()) D.X[base_coords[j]] = substitute(g.D.X[j], F.base);
    D.a = g.D.a.is_zero() ? Scalar() : substitute(g.D.a, F.base);
    if (!const_c) D.a += apply_symbol(D, c) / c;
    out.gens.emplace_back(D, pullback_jet(F, g.psi));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (is_base[i]) continue;
    Derivation D = Derivation::delta(n, i);
    if (!const_c) D.a = differentiate(c, static_cast<int>(i), n) / c;
    out.gens.emplace_back(D, Jet1::zero(n));
  }
  return out;
}

ForwardImage forward_image_pointwise(const LineBundleMorphism& F, const StructureFrame& L,
                                     const std::vector<double>& p, double atol) {
  const std::size_t n = F.source->dim(), nt = F.target->dim();
  if (L.dim() != n) throw ChartMismatch("structure and morphism source differ");
  Mat M = L.matrix(p, atol);
  Mat Dm = derivation_rows(M), Jm = jet_rows(M);
  Mat P(n + 1, nt + 1), Q(nt + 1, n + 1);
  for (std::size_t B = 0; B <= nt; ++B) {
    auto v = evaluate(pullback_jet(F, Jet1::frame(nt, B)), p, atol);
    for (std::size_t A = 0; A <= n; ++A) P(A, B) = v[A];
  }
  for (std::size_t A = 0; A <= n; ++A) {
    auto v = pushforward_derivation(F, Derivation::frame(n, A), p, atol);
    for (std::size_t B = 0; B <= nt; ++B) Q(B, A) = v[B];
  }
  const std::size_t m = L.rank();
  Mat sys(n + 1, m + nt + 1);
  for (std::size_t r = 0; r <= n; ++r) {
    for (std::size_t k = 0; k < m; ++k) sys(r, k) = Jm(r, k);
    for (std::size_t B = 0; B <= nt; ++B) sys(r, m + B) = -P(r, B);
  }
  Mat K = nullspace(sys, atol);
  Mat QD = Q * Dm;
  Mat img(2 * (nt + 1), K.cols());
  for (std::size_t j = 0; j < K.cols(); ++j) {
    for (std::size_t B = 0; B <= nt; ++B) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += QD(B, k) * K(k, j);
      img(B, j) = s;
      img(nt + 1 + B, j) = K(m + B, j);
    }
  }
  ForwardImage out;
  out.basis = column_basis(img, atol);
  out.rank = out.basis.cols();
  out.kernel_rank = nullspace(Jm.vcat(QD), atol).cols();
  bool iso = true;
  for (std::size_t a = 0; a < out.rank && iso; ++a)
    for (std::size_t b = a; b < out.rank; ++b) {
      double s = 0.0;
      for (std::size_t A = 0; A <= nt; ++A)
        s += out.basis(A, a) * out.basis(nt + 1 + A, b) + out.basis(A, b) * out.basis(nt + 1 + A, a);
      if (std::abs(s) > std::sqrt(atol)) {
        iso = false;
        break;
      }
    }
  out.maximal_isotropic = iso && out.rank == nt + 1;
  return out;
}

bool same_forward_image(const LineBundleMorphism& F, const StructureFrame& L, const std::vector<double>& p,
                        const std::vector<double>& q, double atol) {
  auto bp = forward_image_pointwise(F, L, p, atol).basis;
  auto bq = forward_image_pointwise(F, L, q, atol).basis;
  return same_span(bp, bq, std::sqrt(atol));
}

ThickenResult thicken(const StructureFrame& LS, const std::vector<Derivation>& E, const std::vector<Derivation>& G,
                      const Oracle& o, double radius) {
  const std::size_t nS = LS.dim(), r = E.size();
  ThickenResult out;
  out.fiber_dim = r;
  auto base_pts = o.points(*LS.chart);
  for (std::size_t l = 0; l < r; ++l) {
    Witness w;
    if (!section_in_span(LS, OmniSection(E[l], Jet1::zero(nS)), base_pts, o.atol, &w))
      throw WitnessError("E-frame element " + std::to_string(l) + " is not in the structure", w.point, 0.0);
  }
  if (r + G.size() != nS + 1) throw Error("E and G frames must together have dim + 1 elements");

  if (r == 0) {
    out.frame = LS;
    out.theta = Jet1::zero(nS);
    out.omega = LForm(nS, 2);
  } else {
    std::vector<std::string> names = LS.chart->names();
    std::vector<Domain> domains = LS.chart->domains();
    for (std::size_t l = 0; l < r; ++l) {
      std::string nm = "eps" + std::to_string(l + 1);
      while (LS.chart->index_of(nm) >= 0) nm += "_";
      names.push_back(nm);
      domains.push_back(Domain::interval(-radius, radius));
    }
    ChartPtr total = make_chart(names, domains);
    const std::size_t n = nS + r;

    // Columns: E then G, over the (nS+1)-frame of DL_S.
    SMat B = zero_smat(nS + 1, nS + 1);
    for (std::size_t j = 0; j <= nS; ++j) {
      const Derivation& d = j < r ? E[j] : G[j - r];
      if (d.dim() != nS) throw ChartMismatch("E/G frame on a chart of different dimension");
      for (std::size_t A = 0; A <= nS; ++A) B[A][j] = d[A];
    }
    SMat Binv = inverse(B, *LS.chart, o);

    // Theta_G(Delta) = sum_l eps_l u_l, where (u, v) are E and G coordinates of d_D pi(Delta).
    out.theta = Jet1::zero(n);
    for (std::size_t A = 0; A <= nS; ++A) {
      Scalar s;
      for (std::size_t l = 0; l < r; ++l)
        if (!Binv[l][A].is_zero()) s += Scalar::var(static_cast<int>(nS + l)) * Binv[l][A];
      if (A < nS)
        out.theta.eta[A] = s;
      else
        out.theta.g = s;
    }
    out.omega = -d_D(LForm::from_jet(out.theta));
    std::vector<std::size_t> base_coords(nS);
    for (std::size_t i = 0; i < nS; ++i) base_coords[i] = i;
    out.frame = gauge_transform(backward_image_projection(LS, total, base_coords, Scalar(1L)), out.omega);
    out.frame.label = LS.label.empty() ? "thickening" : LS.label + "|thickening";
  }

  const std::size_t n = out.frame.dim();
  auto pts = o.points(*out.frame.chart);
  auto Ms = out.frame.matrices(pts, o.atol);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    std::size_t cap = nullspace(jet_rows(Ms[p]), o.atol).cols();
    if (cap != 0) out.jacobi.fail(Witness{"L_G cap DL nonzero", pts[p], {}, static_cast<double>(cap)});
  }
  if (!out.jacobi.ok) out.jacobi.detail = "thickened structure is not a Jacobi graph near the zero section";

  // Zero section: for lambda = eps_l h, X_lambda = h * sigma(Delta) where (Delta, d eps_l) is in L_G.
  for (const auto& bp : base_pts) {
    std::vector<double> p = bp;
    p.resize(n, 0.0);
    Mat M = out.frame.matrix(p, o.atol);
    Mat Dm = derivation_rows(M), Jm = jet_rows(M);
    for (std::size_t l = 0; l < r; ++l) {
      std::vector<double> target(n + 1, 0.0), c;
      target[nS + l] = 1.0;
      if (!solve(Jm, target, c, o.atol)) {
        out.coisotropic.fail(Witness{"no element with jet d eps", p, {static_cast<int>(l)}, 0.0});
        continue;
      }
      auto D = Dm * c;
      for (std::size_t q = 0; q < r; ++q)
        if (std::abs(D[nS + q]) > std::sqrt(o.atol))
          out.coisotropic.fail(
              Witness{"Hamiltonian symbol leaves the zero section", p, {static_cast<int>(l), static_cast<int>(q)},
                      D[nS + q]});
    }
  }
  if (!out.coisotropic.ok) out.coisotropic.detail = "zero section is not coisotropic";
  return out;
}

}  // namespace omni

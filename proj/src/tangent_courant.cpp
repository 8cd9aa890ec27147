#include "omni/tangent_courant.hpp"

namespace omni {

namespace {
void same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw ChartMismatch("operands live on charts of different dimension");
}
}  // namespace

std::vector<Scalar> TangentSection::components() const {
  std::vector<Scalar> c = X;
  c.insert(c.end(), alpha.begin(), alpha.end());
  return c;
}

TangentSection operator+(const TangentSection& a, const TangentSection& b) {
  same_dim(a.dim(), b.dim());
  TangentSection r = a;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    r.X[i] += b.X[i];
    r.alpha[i] += b.alpha[i];
  }
  return r;
}

TangentSection operator-(const TangentSection& a, const TangentSection& b) {
  same_dim(a.dim(), b.dim());
  TangentSection r = a;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    r.X[i] -= b.X[i];
    r.alpha[i] -= b.alpha[i];
  }
  return r;
}

TangentSection operator*(const Scalar& f, const TangentSection& a) {
  TangentSection r = a;
  for (auto& v : r.X) v = f * v;
  for (auto& v : r.alpha) v = f * v;
  return r;
}

Scalar vector_apply(const std::vector<Scalar>& X, const Scalar& f) {
  Scalar s;
  for (std::size_t i = 0; i < X.size(); ++i)
    if (!X[i].is_zero()) s += X[i] * differentiate(f, static_cast<int>(i), X.size());
  return s;
}

std::vector<Scalar> vector_bracket(const std::vector<Scalar>& X, const std::vector<Scalar>& Y) {
  same_dim(X.size(), Y.size());
  std::vector<Scalar> Z(X.size());
  for (std::size_t k = 0; k < X.size(); ++k) Z[k] = vector_apply(X, Y[k]) - vector_apply(Y, X[k]);
  return Z;
}

std::vector<Scalar> exterior_d(const Scalar& f, std::size_t n) {
  std::vector<Scalar> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = differentiate(f, static_cast<int>(i), n);
  return d;
}

std::vector<Scalar> lie_derivative_1form(const std::vector<Scalar>& X, const std::vector<Scalar>& beta) {
  same_dim(X.size(), beta.size());
  const std::size_t n = X.size();
  std::vector<Scalar> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Scalar s = vector_apply(X, beta[j]);
    for (std::size_t k = 0; k < n; ++k)
      if (!beta[k].is_zero() && !X[k].is_zero()) s += beta[k] * differentiate(X[k], static_cast<int>(j), n);
    out[j] = s;
  }
  return out;
}

Scalar tangent_pairing(const TangentSection& a, const TangentSection& b) {
  same_dim(a.dim(), b.dim());
  Scalar s;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a.alpha[i] * b.X[i] + b.alpha[i] * a.X[i];
  return s;
}

TangentSection tangent_dorfman(const TangentSection& a, const TangentSection& b) {
  same_dim(a.dim(), b.dim());
  const std::size_t n = a.dim();
  TangentSection r;
  r.X = vector_bracket(a.X, b.X);
  r.alpha = lie_derivative_1form(a.X, b.alpha);
  for (std::size_t j = 0; j < n; ++j) {
    Scalar s;
    for (std::size_t k = 0; k < n; ++k) {
      if (b.X[k].is_zero()) continue;
      Scalar da = differentiate(a.alpha[j], static_cast<int>(k), n) - differentiate(a.alpha[k], static_cast<int>(j), n);
      s += b.X[k] * da;
    }
    r.alpha[j] -= s;
  }
  return r;
}

std::vector<Mat> TangentFrame::matrices(const std::vector<std::vector<double>>& pts, double atol) const {
  const std::size_t rows = 2 * dim();
  std::vector<Mat> out(pts.size(), Mat(rows, gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].dim() != dim()) throw ChartMismatch("tangent section on a chart of different dimension");
    auto comps = gens[k].components();
    for (std::size_t r = 0; r < rows; ++r) {
      if (comps[r].is_zero()) continue;
      auto vals = evaluate_batch(comps[r], pts, atol);
      for (std::size_t p = 0; p < pts.size(); ++p) out[p](r, k) = vals[p];
    }
  }
  return out;
}

TangentVerdict classify_tangent(const TangentFrame& F, const Oracle& o) {
  TangentVerdict v;
  auto pts = o.points(*F.chart);
  auto Ms = F.matrices(pts, o.atol);
  v.frame_ok = true;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    std::size_t r = rank(Ms[p], o.atol);
    if (r != F.rank()) {
      v.frame_ok = false;
      v.witnesses.push_back(Witness{"frame rank deficient", pts[p], {}, static_cast<double>(r)});
      return v;
    }
  }
  const std::size_t m = F.rank();
  v.isotropic = true;
  for (std::size_t i = 0; i < m && v.isotropic; ++i)
    for (std::size_t j = i; j < m; ++j) {
      auto eq = scalars_equal_at(tangent_pairing(F.gens[i], F.gens[j]), Scalar(), pts, o);
      if (!eq.equal) {
        v.isotropic = false;
        v.witnesses.push_back(
            Witness{"pairing nonzero", eq.witness, {static_cast<int>(i), static_cast<int>(j)}, eq.lhs});
        break;
      }
    }
  v.maximal = v.isotropic && m == F.dim();
  v.involutive = true;
  for (std::size_t i = 0; i < m && v.involutive; ++i)
    for (std::size_t j = 0; j < m && v.involutive; ++j) {
      TangentSection br = tangent_dorfman(F.gens[i], F.gens[j]);
      for (std::size_t k = 0; k < m; ++k) {
        auto eq = scalars_equal_at(tangent_pairing(br, F.gens[k]), Scalar(), pts, o);
        if (!eq.equal) {
          v.involutive = false;
          v.witnesses.push_back(Witness{"Courant tensor nonzero",
                                        eq.witness,
                                        {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)},
                                        eq.lhs});
          break;
        }
      }
    }
  v.dirac = v.isotropic && v.maximal && v.involutive;
  return v;
}

}  // namespace omni

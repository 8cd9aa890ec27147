#include "omni/der_complex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace omni {

namespace {

struct ComboTable {
  std::vector<std::vector<int>> combos;
  std::map<unsigned, std::size_t> by_mask;
};

const ComboTable& combo_table(std::size_t N, std::size_t k) {
  static std::map<std::pair<std::size_t, std::size_t>, ComboTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(N, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ComboTable t;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (cur.size() == k) {
      unsigned mask = 0;
      for (int i : cur) mask |= 1u << i;
      t.by_mask[mask] = t.combos.size();
      t.combos.push_back(cur);
      return;
    }
    for (int i = start; i < static_cast<int>(N); ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return cache.emplace(key, std::move(t)).first->second;
}

// Sign of the permutation sorting idx; 0 on repeats.
int sort_sign(std::vector<int>& idx) {
  int inversions = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) ++inversions;
    }
  std::sort(idx.begin(), idx.end());
  return inversions % 2 == 0 ? 1 : -1;
}

// Frame element A acting on a component scalar.
Scalar act(std::size_t n, int A, const Scalar& f) {
  if (A < static_cast<int>(n)) return differentiate(f, A, n);
  return f;
}

void same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw ChartMismatch("operands live on charts of different dimension");
}

}  // namespace

LForm::LForm(std::size_t n, std::size_t k) : n_(n), k_(k) {
  if (k > n + 1) throw Error("form degree exceeds n+1");
  c_.assign(combo_table(n + 1, k).combos.size(), Scalar());
}

LForm LForm::scalar(std::size_t n, const Scalar& f) {
  LForm w(n, 0);
  w.c_[0] = f;
  return w;
}

LForm LForm::from_jet(const Jet1& psi) {
  LForm w(psi.dim(), 1);
  for (std::size_t A = 0; A <= psi.dim(); ++A) w.c_[A] = psi[A];
  return w;
}

LForm LForm::from_matrix(const std::vector<std::vector<Scalar>>& M) {
  if (M.empty()) throw Error("empty matrix");
  LForm w(M.size() - 1, 2);
  const auto& idx = w.indices();
  for (std::size_t p = 0; p < idx.size(); ++p) w.c_[p] = M.at(idx[p][0]).at(idx[p][1]);
  return w;
}

const std::vector<std::vector<int>>& LForm::indices() const { return combo_table(n_ + 1, k_).combos; }

Scalar LForm::get(const std::vector<int>& idx) const {
  if (idx.size() != k_) throw Error("wrong number of form arguments");
  std::vector<int> s = idx;
  int sign = sort_sign(s);
  if (sign == 0) return Scalar();
  unsigned mask = 0;
  for (int i : s) mask |= 1u << i;
  const Scalar& v = c_[combo_table(n_ + 1, k_).by_mask.at(mask)];
  return sign > 0 ? v : -v;
}

void LForm::set(const std::vector<int>& sorted_idx, const Scalar& v) {
  unsigned mask = 0;
  for (int i : sorted_idx) mask |= 1u << i;
  c_[combo_table(n_ + 1, k_).by_mask.at(mask)] = v;
}

Jet1 LForm::to_jet() const {
  if (k_ != 1) throw Error("only degree-1 forms are jets");
  return jet_from_components(c_);
}

std::vector<std::vector<Scalar>> LForm::matrix() const {
  if (k_ != 2) throw Error("matrix view needs a degree-2 form");
  std::vector<std::vector<Scalar>> M(n_ + 1, std::vector<Scalar>(n_ + 1));
  const auto& idx = indices();
  for (std::size_t p = 0; p < idx.size(); ++p) {
    M[idx[p][0]][idx[p][1]] = c_[p];
    M[idx[p][1]][idx[p][0]] = -c_[p];
  }
  return M;
}

LForm LForm::operator+(const LForm& o) const {
  same_dim(n_, o.n_);
  if (k_ != o.k_) throw Error("degree mismatch");
  LForm r = *this;
  for (std::size_t p = 0; p < c_.size(); ++p) r.c_[p] += o.c_[p];
  return r;
}

LForm LForm::operator-(const LForm& o) const {
  same_dim(n_, o.n_);
  if (k_ != o.k_) throw Error("degree mismatch");
  LForm r = *this;
  for (std::size_t p = 0; p < c_.size(); ++p) r.c_[p] -= o.c_[p];
  return r;
}

LForm LForm::operator-() const {
  LForm r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

LForm operator*(const Scalar& f, const LForm& w) {
  LForm r = w;
  for (auto& v : r.c_) v = f * v;
  return r;
}

LForm d_D(const LForm& w) {
  const std::size_t n = w.dim(), k = w.degree();
  if (k > n) throw Error("d_D of a top-degree form");
  LForm out(n, k + 1);
  const auto& idx = out.indices();
  for (std::size_t p = 0; p < idx.size(); ++p) {
    Scalar s;
    for (std::size_t j = 0; j <= k; ++j) {
      std::vector<int> rest;
      for (std::size_t t = 0; t <= k; ++t)
        if (t != j) rest.push_back(idx[p][t]);
      Scalar term = act(n, idx[p][j], w.get(rest));
      s = (j % 2 == 0) ? s + term : s - term;
    }
    out.at(p) = s;
  }
  return out;
}

LForm contract(const Derivation& D, const LForm& w) {
  same_dim(D.dim(), w.dim());
  const std::size_t n = w.dim(), k = w.degree();
  if (k == 0) throw Error("contraction of a degree-0 form");
  LForm out(n, k - 1);
  const auto& idx = out.indices();
  for (std::size_t p = 0; p < idx.size(); ++p) {
    Scalar s;
    for (std::size_t A = 0; A <= n; ++A) {
      if (D[A].is_zero()) continue;
      std::vector<int> args{static_cast<int>(A)};
      args.insert(args.end(), idx[p].begin(), idx[p].end());
      Scalar v = w.get(args);
      if (!v.is_zero()) s += D[A] * v;
    }
    out.at(p) = s;
  }
  return out;
}

LForm lie_derivative(const Derivation& D, const LForm& w) {
  if (w.degree() == 0) return LForm::scalar(w.dim(), apply_derivation(D, w.at(0)));
  LForm r = d_D(contract(D, w));
  // Top-degree forms are closed.
  if (w.degree() <= w.dim()) r = r + contract(D, d_D(w));
  return r;
}

LForm cocycle_from_precontact(const std::vector<Scalar>& theta) {
  Jet1 Theta(theta, Scalar());
  return -d_D(LForm::from_jet(Theta));
}

FormEquality forms_equal_at(const LForm& a, const LForm& b, const std::vector<std::vector<double>>& pts,
                            const Oracle& o) {
  same_dim(a.dim(), b.dim());
  if (a.degree() != b.degree()) throw Error("degree mismatch");
  for (std::size_t p = 0; p < a.size(); ++p) {
    auto v = scalars_equal_at(a.at(p), b.at(p), pts, o);
    if (!v.equal) return FormEquality{false, a.indices()[p], v};
  }
  return {};
}

FormEquality forms_equal(const LForm& a, const LForm& b, const Chart& chart, const Oracle& o) {
  return forms_equal_at(a, b, o.points(chart), o);
}

std::vector<Scalar> precontact_from_cocycle(const LForm& omega, const Chart& chart, const Oracle& o) {
  if (omega.degree() != 2) throw Error("a 2-cochain is required");
  if (omega.degree() <= omega.dim()) {
    LForm dw = d_D(omega);
    auto eq = forms_equal(dw, LForm(omega.dim(), 3), chart, o);
    if (!eq.equal) throw WitnessError("2-cochain is not closed", eq.verdict.witness, eq.verdict.lhs);
  }
  Jet1 Theta = (-contract(Derivation::one(omega.dim()), omega)).to_jet();
  return Theta.eta;
}

Mat evaluate_matrix(const LForm& omega, const std::vector<double>& p, double atol) {
  auto M = omega.matrix();
  Mat out(M.size(), M.size());
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M.size(); ++j) out(i, j) = evaluate(M[i][j], p, atol);
  return out;
}

FormKernel form_kernel_at_point(const LForm& omega, const std::vector<double>& p, double tol) {
  Mat M = evaluate_matrix(omega, p, tol);
  FormKernel k;
  k.kernel = nullspace(M, tol);
  const std::size_t n = omega.dim();
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  if (k.kernel.cols() == 0) {
    k.null_distribution = Mat(n, 0);
  } else {
    k.null_distribution = column_basis(k.kernel.select_rows(rows), tol);
  }
  return k;
}

}  // namespace omni

#include "omni/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace omni {

Mat Mat::from_columns(const std::vector<std::vector<double>>& cols, std::size_t rows) {
  Mat m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<double>>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Mat::column(std::size_t j) const {
  std::vector<double> v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<double> Mat::row(std::size_t i) const {
  return std::vector<double>(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                             a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
}

Mat Mat::transpose() const {
  Mat t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
  Mat m(idx.size(), c_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

Mat Mat::select_cols(const std::vector<std::size_t>& idx) const {
  Mat m(r_, idx.size());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

Mat Mat::hcat(const Mat& o) const {
  if (o.r_ != r_ && o.c_ != 0 && c_ != 0) throw std::invalid_argument("hcat row mismatch");
  std::size_t rows = c_ == 0 ? o.r_ : r_;
  Mat m(rows, c_ + o.c_);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
  }
  return m;
}

Mat Mat::vcat(const Mat& o) const {
  if (o.c_ != c_) throw std::invalid_argument("vcat column mismatch");
  Mat m(r_ + o.r_, c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < o.r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m(r_ + i, j) = o(i, j);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("product shape mismatch");
  Mat m(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      double v = (*this)(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += v * o(k, j);
    }
  return m;
}

std::vector<double> Mat::operator*(const std::vector<double>& v) const {
  if (v.size() != c_) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<double> out(r_, 0.0);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

double Mat::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

Rref rref(const Mat& A, double tol) {
  Rref out{A, {}};
  Mat& R = out.R;
  std::size_t row = 0;
  for (std::size_t col = 0; col < R.cols() && row < R.rows(); ++col) {
    std::size_t best = row;
    double bestv = std::abs(R(row, col));
    for (std::size_t i = row + 1; i < R.rows(); ++i) {
      if (std::abs(R(i, col)) > bestv) {
        bestv = std::abs(R(i, col));
        best = i;
      }
    }
    if (bestv <= tol) {
      for (std::size_t i = row; i < R.rows(); ++i) R(i, col) = 0.0;
      continue;
    }
    if (best != row)
      for (std::size_t j = 0; j < R.cols(); ++j) std::swap(R(row, j), R(best, j));
    double p = R(row, col);
    for (std::size_t j = 0; j < R.cols(); ++j) R(row, j) /= p;
    for (std::size_t i = 0; i < R.rows(); ++i) {
      if (i == row) continue;
      double f = R(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < R.cols(); ++j) R(i, j) -= f * R(row, j);
      R(i, col) = 0.0;
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const Mat& A, double tol) { return rref(A, tol).rank(); }

Mat nullspace(const Mat& A, double tol) {
  Rref e = rref(A, tol);
  std::vector<bool> is_pivot(A.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<double>> basis;
  for (std::size_t f = 0; f < A.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<double> v(A.cols(), 0.0);
    v[f] = 1.0;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.R(r, f);
    basis.push_back(std::move(v));
  }
  return Mat::from_columns(basis, A.cols());
}

Mat column_basis(const Mat& A, double tol) {
  Rref e = rref(A, tol);
  return A.select_cols(e.pivots);
}

bool same_span(const Mat& A, const Mat& B, double tol) {
  std::size_t ra = rank(A, tol), rb = rank(B, tol);
  if (ra != rb) return false;
  if (A.cols() == 0 || B.cols() == 0) return ra == 0 && rb == 0;
  return rank(A.hcat(B), tol) == ra;
}

bool in_span(const Mat& A, const std::vector<double>& v, double tol) {
  Mat b = Mat::from_columns({v}, v.size());
  if (A.cols() == 0) return rank(b, tol) == 0;
  return rank(A.hcat(b), tol) == rank(A, tol);
}

bool solve(const Mat& A, const std::vector<double>& b, std::vector<double>& x, double tol) {
  Mat aug = A.hcat(Mat::from_columns({b}, b.size()));
  Rref e = rref(aug, tol);
  x.assign(A.cols(), 0.0);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == A.cols()) return false;
    x[e.pivots[r]] = e.R(r, A.cols());
  }
  return true;
}

Mat intersection(const Mat& A, const Mat& B, double tol) {
  if (A.cols() == 0 || B.cols() == 0) return Mat(A.rows(), 0);
  // [A, -B] [u; v] = 0  =>  A u lies in both spans.
  Mat negB = B;
  for (std::size_t i = 0; i < negB.rows(); ++i)
    for (std::size_t j = 0; j < negB.cols(); ++j) negB(i, j) = -negB(i, j);
  Mat K = nullspace(A.hcat(negB), tol);
  std::vector<std::vector<double>> vecs;
  for (std::size_t k = 0; k < K.cols(); ++k) {
    std::vector<double> u(A.cols());
    for (std::size_t j = 0; j < A.cols(); ++j) u[j] = K(j, k);
    vecs.push_back(A * u);
  }
  Mat V = Mat::from_columns(vecs, A.rows());
  return column_basis(V, tol);
}

}  // namespace omni

#pragma once

#include <cstddef>
#include <vector>

namespace omni {

// Small dense row-major matrix for pointwise subspace computations.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0) : r_(rows), c_(cols), a_(rows * cols, fill) {}
  static Mat from_columns(const std::vector<std::vector<double>>& cols, std::size_t rows);
  static Mat from_rows(const std::vector<std::vector<double>>& rows, std::size_t cols);
  static Mat identity(std::size_t n);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<double> column(std::size_t j) const;
  std::vector<double> row(std::size_t i) const;
  Mat transpose() const;
  Mat select_rows(const std::vector<std::size_t>& idx) const;
  Mat select_cols(const std::vector<std::size_t>& idx) const;
  Mat hcat(const Mat& other) const;
  Mat vcat(const Mat& other) const;
  Mat operator*(const Mat& other) const;
  std::vector<double> operator*(const std::vector<double>& v) const;
  double max_abs() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<double> a_;
};

struct Rref {
  Mat R;                          // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

// Gauss-Jordan elimination with partial pivoting; entries with magnitude
// <= tol are treated as zero.
Rref rref(const Mat& A, double tol);
std::size_t rank(const Mat& A, double tol);
// Columns form a basis of {v : A v = 0}.
Mat nullspace(const Mat& A, double tol);
// Columns form a basis of the column space of A (a subset of A's columns).
Mat column_basis(const Mat& A, double tol);
// Column spaces coincide.
bool same_span(const Mat& A, const Mat& B, double tol);
// Column space of A contains v.
bool in_span(const Mat& A, const std::vector<double>& v, double tol);
// Least-squares-free solve of A x = b for consistent systems; returns false
// when inconsistent.
bool solve(const Mat& A, const std::vector<double>& b, std::vector<double>& x, double tol);
// Basis (columns) of the intersection of the column spaces of A and B.
Mat intersection(const Mat& A, const Mat& B, double tol);

}  // namespace omni

#include "omni/symbolic_matrix.hpp"

#include <map>

namespace omni {

SMat zero_smat(std::size_t rows, std::size_t cols) { return SMat(rows, std::vector<Scalar>(cols)); }

SMat transpose(const SMat& A) {
  if (A.empty()) return {};
  SMat T = zero_smat(A[0].size(), A.size());
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
  return T;
}

namespace {

void require_square(const SMat& A) {
  for (const auto& r : A)
    if (r.size() != A.size()) throw Error("square matrix required");
}

// Determinant of the minor on rows [row, n) and the given column mask.
Scalar minor_det(const SMat& A, std::size_t row, unsigned cols, std::map<unsigned, Scalar>& memo) {
  const std::size_t n = A.size();
  if (row == n) return Scalar(1);
  auto it = memo.find(cols);
  if (it != memo.end()) return it->second;
  Scalar s;
  int sign = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(cols & (1u << j))) continue;
    if (!A[row][j].is_zero()) {
      Scalar term = A[row][j] * minor_det(A, row + 1, cols & ~(1u << j), memo);
      s = sign > 0 ? s + term : s - term;
    }
    sign = -sign;
  }
  memo.emplace(cols, s);
  return s;
}

}  // namespace

Scalar determinant(const SMat& A) {
  require_square(A);
  if (A.size() > 16) throw Error("matrix too large for cofactor expansion");
  std::map<unsigned, Scalar> memo;
  return minor_det(A, 0, (1u << A.size()) - 1u, memo);
}

SMat adjugate(const SMat& A) {
  require_square(A);
  const std::size_t n = A.size();
  SMat adj = zero_smat(n, n);
  if (n == 1) {
    adj[0][0] = Scalar(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SMat M;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<Scalar> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(A[r][c]);
        M.push_back(row);
      }
      Scalar d = determinant(M);
      adj[j][i] = (i + j) % 2 == 0 ? d : -d;
    }
  return adj;
}

SMat inverse(const SMat& A, const Chart& chart, const Oracle& o) {
  Scalar det = determinant(A);
  auto nv = nonvanishing(det, chart, o);
  if (!nv.equal) throw WitnessError("matrix is singular at a sample point", nv.witness, nv.lhs);
  SMat inv = adjugate(A);
  for (auto& row : inv)
    for (auto& v : row)
      if (!v.is_zero()) v = v / det;
  return inv;
}

}  // namespace omni

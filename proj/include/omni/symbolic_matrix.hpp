#pragma once

#include <vector>

#include "omni/scalar.hpp"

namespace omni {

using SMat = std::vector<std::vector<Scalar>>;

SMat zero_smat(std::size_t rows, std::size_t cols);
SMat transpose(const SMat& A);

// Laplace expansion memoized over column subsets; exact at the tree level.
Scalar determinant(const SMat& A);
SMat adjugate(const SMat& A);
// A^{-1} = adj(A)/det(A); throws WitnessError when det(A) vanishes at an oracle point.
SMat inverse(const SMat& A, const Chart& chart, const Oracle& o);

}  // namespace omni

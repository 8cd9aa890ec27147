#pragma once

#include <vector>

#include "omni/linalg.hpp"
#include "omni/line_bundle.hpp"

namespace omni {

// Degree-k L-valued form on DL, stored as components over strictly increasing
// multi-indices of the frame (delta_1..delta_n, 1); frame slot n is 1.
class LForm {
 public:
  LForm() = default;
  LForm(std::size_t n, std::size_t k);  // zero form
  static LForm scalar(std::size_t n, const Scalar& f);
  static LForm from_jet(const Jet1& psi);
  // Degree-2 form from an antisymmetric (n+1)x(n+1) component matrix (upper triangle read).
  static LForm from_matrix(const std::vector<std::vector<Scalar>>& M);

  std::size_t dim() const { return n_; }
  std::size_t degree() const { return k_; }
  std::size_t size() const { return c_.size(); }
  const std::vector<std::vector<int>>& indices() const;  // multi-index of each component

  const Scalar& at(std::size_t pos) const { return c_[pos]; }
  Scalar& at(std::size_t pos) { return c_[pos]; }
  // Value on frame elements (any order, repeats give 0).
  Scalar get(const std::vector<int>& idx) const;
  void set(const std::vector<int>& sorted_idx, const Scalar& v);

  Jet1 to_jet() const;
  std::vector<std::vector<Scalar>> matrix() const;  // degree 2 only

  LForm operator+(const LForm& o) const;
  LForm operator-(const LForm& o) const;
  LForm operator-() const;
  friend LForm operator*(const Scalar& f, const LForm& w);

 private:
  std::size_t n_ = 0, k_ = 0;
  std::vector<Scalar> c_;
};

LForm d_D(const LForm& w);
LForm contract(const Derivation& D, const LForm& w);
LForm lie_derivative(const Derivation& D, const LForm& w);

// Omega = -d_D Theta with Theta = (theta; 0).
LForm cocycle_from_precontact(const std::vector<Scalar>& theta);
// Theta = -i_1 omega; throws WitnessError when omega is not closed.
std::vector<Scalar> precontact_from_cocycle(const LForm& omega, const Chart& chart, const Oracle& o);

struct FormEquality {
  bool equal = true;
  std::vector<int> index;  // offending multi-index
  EqualityVerdict verdict;
  explicit operator bool() const { return equal; }
};
FormEquality forms_equal(const LForm& a, const LForm& b, const Chart& chart, const Oracle& o);
FormEquality forms_equal_at(const LForm& a, const LForm& b, const std::vector<std::vector<double>>& pts,
                            const Oracle& o);

struct FormKernel {
  Mat kernel;        // columns: basis of K_omega in D_pL, (n+1)-vectors
  Mat null_distribution;  // columns: basis of sigma(K_omega) in T_pM
};
FormKernel form_kernel_at_point(const LForm& omega, const std::vector<double>& p, double tol);

Mat evaluate_matrix(const LForm& omega, const std::vector<double>& p, double atol = 1e-9);

}  // namespace omni

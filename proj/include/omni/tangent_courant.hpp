#pragma once

#include <string>
#include <vector>

#include "omni/omni_algebroid.hpp"

namespace omni {

// Section (X, alpha) of TM (+) T*M over a chart.
struct TangentSection {
  std::vector<Scalar> X;
  std::vector<Scalar> alpha;

  std::size_t dim() const { return X.size(); }
  std::vector<Scalar> components() const;
};

TangentSection operator+(const TangentSection& a, const TangentSection& b);
TangentSection operator-(const TangentSection& a, const TangentSection& b);
TangentSection operator*(const Scalar& f, const TangentSection& a);

// Vector field bracket and Cartan operations on ordinary 1-forms.
std::vector<Scalar> vector_bracket(const std::vector<Scalar>& X, const std::vector<Scalar>& Y);
std::vector<Scalar> lie_derivative_1form(const std::vector<Scalar>& X, const std::vector<Scalar>& beta);
std::vector<Scalar> exterior_d(const Scalar& f, std::size_t n);
Scalar vector_apply(const std::vector<Scalar>& X, const Scalar& f);

Scalar tangent_pairing(const TangentSection& a, const TangentSection& b);
// ([X,Y], L_X beta - i_Y d alpha)
TangentSection tangent_dorfman(const TangentSection& a, const TangentSection& b);

struct TangentFrame {
  ChartPtr chart;
  std::vector<TangentSection> gens;
  std::size_t dim() const { return chart->dim(); }
  std::size_t rank() const { return gens.size(); }
  std::vector<Mat> matrices(const std::vector<std::vector<double>>& pts, double atol) const;
};

struct TangentVerdict {
  bool frame_ok = false;
  bool isotropic = false;
  bool maximal = false;
  bool involutive = false;
  bool dirac = false;
  std::vector<Witness> witnesses;
};

TangentVerdict classify_tangent(const TangentFrame& F, const Oracle& o);

}  // namespace omni

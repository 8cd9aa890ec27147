#pragma once

#include <string>
#include <vector>

#include "omni/der_complex.hpp"

namespace omni {

// Section (Delta, psi) of DL (+) J^1 L.
struct OmniSection {
  Derivation D;
  Jet1 psi;

  OmniSection() = default;
  OmniSection(Derivation d, Jet1 p) : D(std::move(d)), psi(std::move(p)) {}
  static OmniSection zero(std::size_t n) { return {Derivation::zero(n), Jet1::zero(n)}; }
  std::size_t dim() const { return D.dim(); }
  // 2(n+1) components: derivation part then jet part.
  std::vector<Scalar> components() const;
};

OmniSection operator+(const OmniSection& a, const OmniSection& b);
OmniSection operator-(const OmniSection& a, const OmniSection& b);
OmniSection operator*(const Scalar& f, const OmniSection& a);

Scalar omni_pairing(const OmniSection& a, const OmniSection& b);
OmniSection dorfman(const OmniSection& a, const OmniSection& b);

// Finite spanning family of sections representing a candidate subbundle.
struct StructureFrame {
  ChartPtr chart;
  std::vector<OmniSection> gens;
  std::string label;

  std::size_t dim() const { return chart->dim(); }
  std::size_t rank() const { return gens.size(); }
  // 2(n+1) x m coefficient matrix at each point.
  std::vector<Mat> matrices(const std::vector<std::vector<double>>& pts, double atol) const;
  Mat matrix(const std::vector<double>& p, double atol) const;
};

// Derivation rows (first n+1) and jet rows (last n+1) of a coefficient matrix.
Mat derivation_rows(const Mat& M);
Mat jet_rows(const Mat& M);

struct Witness {
  std::string kind;
  std::vector<double> point;
  std::vector<int> indices;
  double value = 0.0;
};

// Generic pass/fail outcome with the points that failed.
struct CheckVerdict {
  bool ok = true;
  std::string detail;
  std::vector<Witness> witnesses;
  explicit operator bool() const { return ok; }
  void fail(Witness w) {
    ok = false;
    witnesses.push_back(std::move(w));
  }
};

// Frame condition: full column rank at every oracle point.
bool frame_condition(const StructureFrame& F, const Oracle& o, Witness* w = nullptr);

// The section lies in the span of the frame at every given point.
bool section_in_span(const StructureFrame& F, const OmniSection& s, const std::vector<std::vector<double>>& pts,
                     double atol, Witness* w = nullptr);

// Upsilon(alpha_i, alpha_j, alpha_k); throws WitnessError on non-isotropic input.
Scalar courant_jacobi_tensor(const StructureFrame& F, std::size_t i, std::size_t j, std::size_t k, const Oracle& o);
Scalar courant_jacobi_value(const OmniSection& a, const OmniSection& b, const OmniSection& c);

struct Classification {
  bool frame_ok = false;
  bool isotropic = false;
  bool maximal = false;
  bool involutive = false;
  bool dirac_jacobi = false;
  std::vector<Witness> witnesses;
};

Classification classify_subbundle(const StructureFrame& F, const Oracle& o);

// pr_D(L)^0 == L cap J^1L and pr_J(L) == (L cap DL)^0 at every oracle point.
bool characteristic_equalities(const StructureFrame& F, const Oracle& o, Witness* w = nullptr);

}  // namespace omni

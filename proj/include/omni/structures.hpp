#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omni/symbolic_matrix.hpp"
#include "omni/tangent_courant.hpp"

namespace omni {

// Antisymmetric (n+1)x(n+1) matrix J^{AB} over the J^1 L frame (dz^i (x) mu, j^1 mu).
// Slot n is j^1 mu: J^{ij} is the bivector Lambda, J^{i n} the vector part Gamma^i.
class JacobiMatrix {
 public:
  JacobiMatrix() = default;
  explicit JacobiMatrix(std::size_t n) : n_(n), M_(zero_smat(n + 1, n + 1)) {}
  // Upper triangle is read; the lower triangle is ignored.
  static JacobiMatrix from_matrix(const SMat& M);
  static JacobiMatrix from_bivector(const SMat& Lambda, const std::vector<Scalar>& Gamma);

  std::size_t dim() const { return n_; }
  Scalar at(std::size_t A, std::size_t B) const;
  void set(std::size_t A, std::size_t B, const Scalar& v);  // also sets (B, A)
  // J^sharp(psi) = sum_{A,B} psi_A J^{AB} e_B.
  Derivation sharp(const Jet1& psi) const;
  const SMat& matrix() const { return M_; }

 private:
  std::size_t n_ = 0;
  SMat M_;
};

// {f, g} = <J^sharp(j^1 f), j^1 g>
Scalar jacobi_bracket(const JacobiMatrix& J, const Scalar& f, const Scalar& g);

struct HomogeneousPoissonData {
  SMat pi;                 // antisymmetric n x n
  std::vector<Scalar> Z;   // n components
};

// pi^sharp(eta)^j = sum_i eta_i pi^{ij}
std::vector<Scalar> poisson_sharp(const SMat& pi, const std::vector<Scalar>& eta);
// (L_Z pi)^{ij} = Z(pi^{ij}) - pi^{kj} d_k Z^i - pi^{ik} d_k Z^j
SMat lie_derivative_bivector(const std::vector<Scalar>& Z, const SMat& pi);

// Linear combination sum_k c_k gens[k].
OmniSection combination(const StructureFrame& F, const std::vector<Scalar>& c);

StructureFrame from_two_cocycle(const ChartPtr& chart, const LForm& omega);
StructureFrame from_jacobi(const ChartPtr& chart, const JacobiMatrix& J);
// Throws WitnessError with the curvature value when Gamma is not flat.
StructureFrame from_flat_connection(const ChartPtr& chart, const std::vector<Scalar>& Gamma, const Oracle& o);
StructureFrame unit_structure(const ChartPtr& chart);
StructureFrame from_lcps(const ChartPtr& chart, const std::vector<Scalar>& Gamma, const SMat& omega_bar,
                         const Oracle& o);
StructureFrame from_homogeneous_poisson(const ChartPtr& chart, const HomogeneousPoissonData& d);
// Input frame of TM (+) T*M as (X, eta) pairs; throws WitnessError unless it is a Dirac structure.
StructureFrame lift_dirac(const ChartPtr& chart, const std::vector<TangentSection>& dirac, const Oracle& o);
StructureFrame gauge_transform(const StructureFrame& F, const LForm& omega);

struct RankRow {
  std::vector<double> point;
  std::size_t cap_jet = 0;  // rank of L cap J^1 L
  std::size_t cap_der = 0;  // rank of L cap DL
  std::size_t tau = 0;      // rank of the 1-coefficient on L cap DL
};

struct Recognition {
  bool cocycle = false;              // L cap J^1 L = 0 everywhere
  bool jacobi = false;               // L cap DL = 0 everywhere
  bool homogeneous_poisson = false;  // tau : L cap DL -> R iso everywhere
  std::optional<LForm> omega;
  std::optional<JacobiMatrix> J;
  std::optional<HomogeneousPoissonData> hp;
  std::vector<RankRow> table;
  std::string tag() const;  // first applicable class or "unclassified"
};

Recognition recognize(const StructureFrame& F, const Oracle& o);

// Pointwise equality of the spans of two frames at all oracle points.
bool same_structure(const StructureFrame& A, const StructureFrame& B, const Oracle& o, Witness* w = nullptr);

}  // namespace omni

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omni/morphisms.hpp"

namespace omni {

// Pointwise invariants of a Dirac-Jacobi structure. Bases are matrix columns:
// I, E in the (n+1)-frame of DL; K, sigma(I) in T_pM.
struct PointReport {
  std::vector<double> point;
  std::size_t rank_I = 0, rank_E = 0, rank_K = 0, rank_sigma_I = 0;
  bool precontact = false;
  bool unit_in_L = false;  // (1, 0) lies in L_p
  Mat I_basis, E_basis, K_basis, sigma_I_basis;
  Mat leaf_form;  // omega(b_r, b_s) on the I basis
  std::string tag() const { return precontact ? "precontact" : "lcps"; }
};

// Throws WitnessError when the frame is rank deficient at p.
PointReport point_report(const StructureFrame& F, const std::vector<double>& p, double atol);

// Leaf 2-form omega(b_r, b_s) = <b_s, phi_r> on a basis b of I_p, where
// (b_r, phi_r) lies in L_p. With shifted = true each partner phi_r is moved by
// elements of L cap J^1L, for well-definedness checks.
Mat leaf_form_at(const StructureFrame& F, const std::vector<double>& p, double atol, bool shifted = false);

// L_p = {(D, psi) : D in I_p, i_D omega = psi restricted to I_p} at every oracle point.
CheckVerdict reconstruction_check(const StructureFrame& F, const Oracle& o);

struct AdmissibilityVerdict {
  bool membership = true;  // jet lies in pr_J(L_p) at every point
  bool null_test = true;   // pairs to zero with E_p (sections) or K_p (functions)
  bool agree = true;       // both tests give the same answer at every point
  std::optional<bool> hamiltonian_ok;  // supplied witness lies in L
  std::vector<Witness> witnesses;
  bool admissible() const { return membership; }
};

AdmissibilityVerdict is_admissible_section(const StructureFrame& F, const Scalar& f, const Oracle& o,
                                           const Derivation* hamiltonian = nullptr);
AdmissibilityVerdict is_admissible_function(const StructureFrame& F, const Scalar& f, const Oracle& o);

// Hamiltonian derivation of f for structures with L cap DL = 0 (jet part
// invertible); throws WitnessError otherwise.
Derivation hamiltonian_derivation(const StructureFrame& F, const Scalar& f, const Oracle& o);

// {f, g} = D_f(g); throws WitnessError unless (D_f, j^1 f) lies in L.
Scalar admissible_bracket(const StructureFrame& F, const Scalar& f, const Derivation& Df, const Scalar& g,
                          const Oracle& o);

// J_perp(phi, psi) = <D_phi, psi> with (D_phi, phi) in L_p; both jets must lie
// in pr_J(L_p), otherwise WitnessError.
double transverse_bracket_at(const StructureFrame& F, const std::vector<double>& p, const std::vector<double>& phi,
                             const std::vector<double>& psi, double atol);

// Block decomposition of the local normal form at one point. Coordinates are
// split into x (leaf directions, plus 1 in the precontact case) and y (the
// rest, plus 1 in the lcps case).
struct Normalization {
  bool ok = false;
  std::string message;
  std::string case_tag;  // "lcps" or "precontact"
  std::size_t leaf_dim = 0;
  std::vector<std::size_t> x_slots, y_slots;  // frame slots; slot n is 1
  Mat E, F, G, H;                             // alpha = [Id | E | F | 0], beta = [0 | G | H | Id]
  double residual_F = 0.0, residual_G = 0.0, residual_HE = 0.0;
};

Normalization normalize_frame_at_point(const StructureFrame& F, const std::vector<double>& p, double atol);

struct TransverseStructure {
  SliceImage slice;
  Recognition recognition;
  std::string expected;    // "jacobi" or "homogeneous_poisson"
  bool vanishes_at_point = false;  // J (resp. pi and Z) vanish at the base point
  CheckVerdict verdict;
};

// Slice through p = (slice constants, free coordinates at `free_point`).
TransverseStructure transverse_structure_at(const StructureFrame& F, const CoordinateSlice& slice,
                                            const std::vector<double>& free_point, const Oracle& o);

// Parity of rank sigma(I_p) is constant among precontact points and among lcps points.
CheckVerdict parity_check(const StructureFrame& F, const std::vector<std::vector<double>>& pts, double atol);
// rank E = rank K + 1 when (1, 0) is in L_p and rank E = rank K otherwise.
CheckVerdict dichotomy_check(const StructureFrame& F, const std::vector<std::vector<double>>& pts, double atol);

// Regular grid with `per_axis` points per coordinate inside the chart domain.
std::vector<std::vector<double>> grid_points(const Chart& chart, std::size_t per_axis);

}  // namespace omni

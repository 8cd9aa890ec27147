#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omni/structures.hpp"

namespace omni {

// L-valued 1-form (components along dz^i) paired with an L-section.
struct SpencerPair {
  std::vector<Scalar> D;
  Scalar l;
};

// psi = (eta, g) -> (dg - eta, g).
SpencerPair classical_spencer(const Jet1& psi);
// Spencer embedding of an L-valued 1-form: omega -> (omega, 0).
Jet1 spencer_embedding(const std::vector<Scalar>& omega);

// Lie derivative of an L-valued 1-form along a derivation (X, a):
// (L_D w)_j = X(w_j) + a w_j + sum_k w_k d_j X^k.
std::vector<Scalar> lie_derivative_lform1(const Derivation& D, const std::vector<Scalar>& w);

struct SpencerValue {
  std::vector<Scalar> D;    // classical Spencer operator of the jet part
  Scalar l;                 // L-component of the jet part
  Derivation nabla;         // derivation part
  std::vector<Scalar> rho;  // symbol of nabla
};

SpencerValue spencer_of_section(const OmniSection& gamma);
// gamma = sum_k c_k gens[k].
SpencerValue spencer_of_structure(const StructureFrame& F, const std::vector<Scalar>& coeffs);
// (nabla, gamma(D) - j^1 l); equals (Delta, -psi) for gamma = (Delta, psi).
OmniSection spencer_morphism(const SpencerValue& v);

// Projection onto span(gens) along a constant complement: n+1 ambient rows R
// are fixed so that the frame restricted to R is invertible on the chart, and
// among such R the one with the largest min |det| over the oracle points is used;
// P(s) = sum_k (M_R^{-1} s_R)_k gens[k]. On involutive frames P(dorfman) = dorfman.
class FrameProjector {
 public:
  FrameProjector(const StructureFrame& F, const Oracle& o);
  OmniSection project(const OmniSection& s) const;
  std::vector<Scalar> coefficients(const OmniSection& s) const;
  const std::vector<std::size_t>& rows() const { return rows_; }

 private:
  StructureFrame F_;
  std::vector<std::size_t> rows_;
  SMat inv_;
};

struct SpencerVerdict {
  CheckVerdict spenc1;          // D(f a) = f D(a) + df l(a)
  CheckVerdict spenc2;          // D([a, b]) = L_{nabla a} D(b) - L_{nabla b} D(a)
  CheckVerdict spenc3;          // l([a, b]) = nabla_a l(b) - i_{rho(b)} D(a)
  CheckVerdict anchor;          // sigma o nabla = rho
  CheckVerdict representation;  // nabla_{[a, b]} = [nabla_a, nabla_b]
  CheckVerdict isotropy;        // <<(nabla, D)(a), (nabla, D)(b)>> = 0
  CheckVerdict bracket_dd;      // generator brackets stay in the frame span
  bool ok() const {
    return spenc1.ok && spenc2.ok && spenc3.ok && anchor.ok && representation.ok && isotropy.ok && bracket_dd.ok;
  }
  bool spencer_ok() const { return spenc1.ok && spenc2.ok && spenc3.ok; }
};

// Checks the axioms on `trials` random section pairs with polynomial
// coefficients; brackets are P(dorfman).
SpencerVerdict verify_spencer_axioms(const StructureFrame& F, const Oracle& o, int trials = 2);

}  // namespace omni

#pragma once

#include <string>
#include <vector>

#include "omni/analysis.hpp"
#include "omni/tangent_courant.hpp"

namespace omni {

// Chart (z, s) with the fiber coordinate s appended last, sampled in +-[0.5, 2].
// Scalars of the base chart are valid on the extension unchanged.
ChartPtr extended_chart(const ChartPtr& chart);

// Lifts to the slit dual bundle: f -> s f, (X, a) -> X + a s d/ds,
// (eta, g) -> s eta_i dz^i + g ds. Components live on the extended chart.
Scalar lift_section(const Scalar& f, std::size_t n);
std::vector<Scalar> lift_derivation(const Derivation& D);
std::vector<Scalar> lift_jet(const Jet1& psi);
TangentSection lift_omni(const OmniSection& a);
// Euler field s d/ds.
std::vector<Scalar> euler_field(std::size_t n);

// Intertwining laws for one pair of omni-sections on `chart` (base chart):
// lift of the commutator, pairing s * <<a, b>>, lift of the Dorfman bracket,
// X~(s f) = s D(f) for the given probe f, and psi~(D~) = s <D, psi>.
CheckVerdict intertwining_check(const ChartPtr& chart, const OmniSection& a, const OmniSection& b, const Scalar& f,
                                const Oracle& o);

struct Diracization {
  TangentFrame frame;       // over the extended chart
  TangentVerdict verdict;   // Dirac checks under the standard Courant operations
  CheckVerdict homogeneity; // [E, X~] = 0 and L_E psi~ = psi~ for every lifted generator
  bool dirac() const { return verdict.dirac && homogeneity.ok; }
};

Diracization diracize(const StructureFrame& F, const Oracle& o);

struct DimensionCheck {
  std::size_t lifted_rank = 0;  // rank of the vector parts of the lift at (p, s)
  std::size_t expected = 0;     // rank sigma(I_p) + 1 if p is precontact
  std::string tag;
  bool ok = false;
};

DimensionCheck characteristic_dimension_check(const StructureFrame& F, const std::vector<double>& p, double s,
                                              double atol);

}  // namespace omni

#pragma once

#include <string>
#include <vector>

#include "omni/structures.hpp"

namespace omni {

// Coordinate slice {z^i = c_i : i in fixed}.
struct CoordinateSlice {
  std::vector<std::size_t> fixed;
  std::vector<mpq_class> values;

  // "y=0, z=1/2"; values must be constant expressions.
  static CoordinateSlice parse(const std::string& text, const Chart& chart);
  bool empty() const { return fixed.empty(); }
};

// Chart of the free coordinates of a slice, keeping names and domains.
ChartPtr slice_chart(const Chart& chart, const CoordinateSlice& slice);
// Inclusion of the slice as a regular morphism with unit fiber factor.
LineBundleMorphism slice_inclusion(const ChartPtr& chart, const ChartPtr& sub, const CoordinateSlice& slice);

struct CleanRow {
  std::vector<double> point;  // slice coordinates
  std::size_t rank = 0;       // rank of L cap (N*S (x) L)
};

struct SliceImage {
  StructureFrame frame;
  LineBundleMorphism inclusion;
  std::vector<CleanRow> clean_table;
};

// Backward image along the inclusion of a coordinate slice. Throws
// WitnessError on a clean-intersection failure or when the symbolic
// elimination finds no pivot that stays away from zero on the slice.
SliceImage backward_image_slice(const StructureFrame& F, const CoordinateSlice& slice, const Oracle& o);

// Backward image along the projection of `total` onto the coordinates
// base_coords (one total index per base coordinate), with fiber factor c.
StructureFrame backward_image_projection(const StructureFrame& base, const ChartPtr& total,
                                         const std::vector<std::size_t>& base_coords, const Scalar& c);

struct ForwardImage {
  Mat basis;                      // columns in the target fiber, 2(n'+1) rows
  std::size_t rank = 0;
  std::size_t kernel_rank = 0;    // rank of ker d_D F cap L at p
  bool maximal_isotropic = false;
};

ForwardImage forward_image_pointwise(const LineBundleMorphism& F, const StructureFrame& L,
                                     const std::vector<double>& p, double atol);
// Forward images at two points with the same base image coincide.
bool same_forward_image(const LineBundleMorphism& F, const StructureFrame& L, const std::vector<double>& p,
                        const std::vector<double>& q, double atol);

struct ThickenResult {
  StructureFrame frame;   // on the chart extended by fiber coordinates
  std::size_t fiber_dim = 0;
  Jet1 theta;             // Theta_G as a degree-1 form
  LForm omega;            // -d_D Theta_G
  CheckVerdict jacobi;        // L_G cap DL = 0 at sampled points near the zero section
  CheckVerdict coisotropic;   // Hamiltonian symbols tangent to the zero section
};

// Jacobi thickening of a structure with regular null der-distribution.
// E spans L cap DL_S (as derivations) and G completes it to DL_S.
// The fiber coordinates are sampled in [-radius, radius].
ThickenResult thicken(const StructureFrame& LS, const std::vector<Derivation>& E, const std::vector<Derivation>& G,
                      const Oracle& o, double radius = 0.1);

}  // namespace omni

#include <doctest.h>

#include "omni/morphisms.hpp"

using namespace omni;

namespace {
ChartPtr chart_of(std::size_t n) {
  std::vector<std::string> names{"x", "y", "z"};
  names.resize(n);
  return make_chart(names);
}

Scalar P(const std::string& s, const ChartPtr& c) { return parse_scalar(s, *c); }

JacobiMatrix worked_jacobi(const ChartPtr& c) {
  JacobiMatrix J(2);
  J.set(0, 1, P("-x", c));
  J.set(1, 2, Scalar(1));
  return J;
}

// span{1 + x d/dx, dx - x 1} on (x).
StructureFrame slice_structure(const ChartPtr& c1) {
  Derivation D({P("x", c1)}, Scalar(1));
  Jet1 psi({Scalar(1)}, P("-x", c1));
  return StructureFrame{c1, {{D, Jet1::zero(1)}, {Derivation::zero(1), psi}}, "slice"};
}

LineBundleMorphism projection(const ChartPtr& total, const ChartPtr& base, std::vector<std::size_t> coords) {
  LineBundleMorphism F{total, base, {}, Scalar(1)};
  for (auto i : coords) F.base.push_back(Scalar::var(static_cast<int>(i)));
  return F;
}
}  // namespace

TEST_CASE("coordinate slice parsing") {
  auto c = chart_of(3);
  auto s = CoordinateSlice::parse("y=0, z = 1/2", *c);
  REQUIRE(s.fixed.size() == 2);
  CHECK(s.fixed[0] == 1);
  CHECK(s.values[1] == mpq_class(1, 2));
  CHECK(CoordinateSlice::parse("", *c).empty());
  CHECK_THROWS(CoordinateSlice::parse("w=0", *c));
  CHECK_THROWS(CoordinateSlice::parse("y=x", *c));
  auto sub = slice_chart(*c, s);
  CHECK(sub->dim() == 1);
  CHECK(sub->names()[0] == "x");
}

TEST_CASE("slice of the worked Jacobi structure") {
  Oracle o;
  auto c = chart_of(2);
  SliceImage S = backward_image_slice(from_jacobi(c, worked_jacobi(c)), CoordinateSlice::parse("y=0", *c), o);
  CHECK(S.frame.dim() == 1);
  CHECK(S.frame.rank() == 2);
  CHECK(classify_subbundle(S.frame, o).dirac_jacobi);
  CHECK(same_structure(S.frame, slice_structure(S.frame.chart), o));
  REQUIRE_FALSE(S.clean_table.empty());
  for (const auto& row : S.clean_table) CHECK(row.rank == 0);
}

TEST_CASE("slice of a cocycle graph is the graph of the pulled-back cocycle") {
  Oracle o;
  auto c3 = chart_of(3);
  LForm omega = cocycle_from_precontact({P("-y", c3), P("x", c3), Scalar(1)});
  SliceImage S = backward_image_slice(from_two_cocycle(c3, omega), CoordinateSlice::parse("z=1/2", *c3), o);
  auto c2 = S.frame.chart;
  LForm pulled = cocycle_from_precontact({P("-y", c2), P("x", c2)});
  CHECK(same_structure(S.frame, from_two_cocycle(c2, pulled), o));
  CHECK(classify_subbundle(S.frame, o).dirac_jacobi);
}

TEST_CASE("identity slice leaves the structure unchanged") {
  Oracle o;
  auto c = chart_of(2);
  StructureFrame F = from_jacobi(c, worked_jacobi(c));
  SliceImage S = backward_image_slice(F, CoordinateSlice{}, o);
  CHECK(same_structure(S.frame, F, o));
}

TEST_CASE("backward image along a projection") {
  Oracle o;
  auto base = make_chart({"y"});
  auto total = chart_of(2);
  StructureFrame L = backward_image_projection(unit_structure(base), total, {1}, Scalar(1));
  CHECK(L.rank() == 3);
  CHECK(classify_subbundle(L, o).dirac_jacobi);
  CHECK(section_in_span(L, {Derivation::delta(2, 0), Jet1::zero(2)}, o.points(*total), o.atol));

  // Projection followed by the section x = 0 returns the base structure.
  JacobiMatrix Jb(1);
  Jb.set(0, 1, P("y", base));
  StructureFrame Lb = from_jacobi(base, Jb);
  for (auto c : {"1", "1 + x^2"}) {
    StructureFrame Lt = backward_image_projection(Lb, total, {1}, P(c, total));
    CHECK(Lt.rank() == 3);
    CHECK(classify_subbundle(Lt, o).dirac_jacobi);
    SliceImage S = backward_image_slice(Lt, CoordinateSlice::parse("x=0", *total), o);
    CHECK(same_structure(S.frame, Lb, o));
  }
}

TEST_CASE("forward images") {
  Oracle o;
  auto c = chart_of(2);
  StructureFrame LJ = from_jacobi(c, worked_jacobi(c));
  for (const auto& p : o.points(*c)) {
    auto fw = forward_image_pointwise(identity_morphism(c), LJ, p, o.atol);
    CHECK(fw.rank == 3);
    CHECK(fw.kernel_rank == 0);
    CHECK(fw.maximal_isotropic);
    CHECK(same_span(fw.basis, LJ.matrix(p, o.atol), o.atol));
  }

  auto base = make_chart({"y"});
  auto F = projection(c, base, {1});
  StructureFrame LF = from_flat_connection(c, {Scalar(), Scalar()}, o);
  StructureFrame LFb = from_flat_connection(base, {Scalar()}, o);
  for (double y : {-0.5, 0.3}) {
    CHECK(same_forward_image(F, LF, {-0.8, y}, {0.6, y}, o.atol));
    auto fw = forward_image_pointwise(F, LF, {0.1, y}, o.atol);
    CHECK(fw.maximal_isotropic);
    CHECK(fw.kernel_rank == 1);
    CHECK(same_span(fw.basis, LFb.matrix({y}, o.atol), o.atol));
  }

  // Forward image of a pulled-back structure recovers the base fiberwise.
  JacobiMatrix Jb(1);
  Jb.set(0, 1, P("1 + y^2", base));
  StructureFrame Lb = from_jacobi(base, Jb);
  StructureFrame Lt = backward_image_projection(Lb, c, {1}, Scalar(1));
  for (const auto& p : o.points(*c)) {
    auto fw = forward_image_pointwise(F, Lt, p, o.atol);
    CHECK(fw.maximal_isotropic);
    CHECK(same_span(fw.basis, Lb.matrix({p[1]}, o.atol), o.atol));
  }

  // The worked J has the same image at fiber mates; a Reeb field scaled along x does not.
  CHECK(same_forward_image(F, LJ, {-0.8, 0.2}, {0.6, 0.2}, o.atol));
  JacobiMatrix Jx(2);
  Jx.set(1, 2, P("1 + x^2", c));
  CHECK_FALSE(same_forward_image(F, from_jacobi(c, Jx), {-0.8, 0.2}, {0.6, 0.2}, o.atol));
}

TEST_CASE("Jacobi thickening of the slice structure") {
  Oracle o;
  auto c1 = make_chart({"x"});
  StructureFrame LS = slice_structure(c1);
  Derivation e({P("x", c1)}, Scalar(1));
  ThickenResult T = thicken(LS, {e}, {Derivation::delta(1, 0)}, o);
  CHECK(T.fiber_dim == 1);
  CHECK(T.frame.dim() == 2);
  CHECK(T.frame.chart->names()[1] == "eps1");
  CHECK(T.jacobi.ok);
  CHECK(T.coisotropic.ok);
  CHECK(classify_subbundle(T.frame, o).dirac_jacobi);
  CHECK(scalars_equal(T.theta.g, Scalar::var(1), *T.frame.chart, o).equal);

  SliceImage S = backward_image_slice(T.frame, CoordinateSlice::parse("eps1=0", *T.frame.chart), o);
  CHECK(same_structure(S.frame, LS, o));

  // E not inside L is rejected.
  CHECK_THROWS(thicken(LS, {Derivation::delta(1, 0)}, {e}, o));
}

TEST_CASE("thickening with trivial null distribution") {
  Oracle o;
  auto c = chart_of(2);
  StructureFrame LJ = from_jacobi(c, worked_jacobi(c));
  ThickenResult T = thicken(LJ, {}, {Derivation::delta(2, 0), Derivation::delta(2, 1), Derivation::one(2)}, o);
  CHECK(T.fiber_dim == 0);
  CHECK(T.frame.dim() == 2);
  CHECK(same_structure(T.frame, LJ, o));
  CHECK(T.jacobi.ok);
}

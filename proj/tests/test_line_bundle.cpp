#include <doctest.h>

#include "omni/random.hpp"
#include "omni/line_bundle.hpp"

using namespace omni;

namespace {
Scalar P(const std::string& s, const Chart& c) { return parse_scalar(s, c); }

bool eq(const Scalar& a, const Scalar& b, const Chart& c) { return scalars_equal(a, b, c, Oracle{}).equal; }

bool eq(const Derivation& a, const Derivation& b, const Chart& c) {
  for (std::size_t A = 0; A <= a.dim(); ++A)
    if (!eq(a[A], b[A], c)) return false;
  return true;
}

bool eq(const Jet1& a, const Jet1& b, const Chart& c) {
  for (std::size_t A = 0; A <= a.dim(); ++A)
    if (!eq(a[A], b[A], c)) return false;
  return true;
}
}  // namespace

TEST_CASE("apply_derivation examples") {
  Chart x({"x"});
  CHECK(eq(apply_derivation(Derivation::delta(1, 0), P("x^2", x)), P("2*x", x), x));
  Scalar f = P("sin(x)*exp(x)", x);
  CHECK(eq(apply_derivation(Derivation::one(1), f), f, x));
  CHECK(eq(apply_derivation(Derivation({P("x", x)}, 1), P("x", x)), P("2*x", x), x));
}

TEST_CASE("commutator examples") {
  Chart xy({"x", "y"});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(eq(commutator(Derivation::delta(2, i), Derivation::delta(2, j)), Derivation::zero(2), xy));
      CHECK(eq(commutator(Derivation::delta(2, i), Derivation::one(2)), Derivation::zero(2), xy));
    }
  Chart x({"x"});
  Derivation xdx({P("x", x)}, 0), dx = Derivation::delta(1, 0);
  CHECK(eq(commutator(xdx, dx), Derivation({Scalar(-1)}, 0), x));
}

TEST_CASE("jet pairing and prolongation") {
  Chart xy({"x", "y"});
  Scalar f = P("x*y + cos(y)", xy);
  CHECK(eq(jet_pairing(Derivation::one(2), jet_prolong(f, 2)), f, xy));
  for (std::size_t A = 0; A <= 2; ++A)
    for (std::size_t B = 0; B <= 2; ++B)
      CHECK(eq(jet_pairing(Derivation::frame(2, A), Jet1::frame(2, B)), Scalar(A == B ? 1 : 0), xy));
  Chart x({"x"});
  CHECK(eq(jet_pairing(Derivation({Scalar(1)}, 2), Jet1({Scalar(3)}, 5)), Scalar(13), x));
  CHECK(eq(jet_prolong(P("x^2", x), 1), Jet1({P("2*x", x)}, P("x^2", x)), x));
  CHECK(eq(jet_prolong(Scalar(1), 1), Jet1({Scalar()}, 1), x));
  CHECK(eq(jet_prolong(P("x*y", xy), 2), Jet1({P("y", xy), P("x", xy)}, P("x*y", xy)), xy));
  CHECK_THROWS_AS(jet_pairing(Derivation::one(1), Jet1::zero(2)), ChartMismatch);
}

TEST_CASE("property: commutator is the operator commutator, Jacobi identity, prolongation law") {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(n);
    Chart c(names);
    RandomGen gen(200 + n, n);
    for (int k = 0; k < 25; ++k) {
      Derivation D = gen.derivation(2), E = gen.derivation(2), G = gen.derivation(2);
      Scalar f = gen.scalar(2);
      CHECK(eq(apply_derivation(commutator(D, E), f),
               apply_derivation(D, apply_derivation(E, f)) - apply_derivation(E, apply_derivation(D, f)), c));
      Derivation jac = commutator(D, commutator(E, G)) + commutator(E, commutator(G, D)) +
                       commutator(G, commutator(D, E));
      CHECK(eq(jac, Derivation::zero(n), c));
      CHECK(eq(jet_pairing(D, jet_prolong(f, n)), apply_derivation(D, f), c));
    }
  }
}

TEST_CASE("pullback of sections") {
  auto x = make_chart({"x"});
  auto y = make_chart({"y"}, {Domain::interval(-1.0, 1.0)});
  LineBundleMorphism id = identity_morphism(x);
  Scalar f = parse_scalar("x^3 - x", *x);
  CHECK(eq(pullback_section(id, f), f, *x));

  LineBundleMorphism sq{x, y, {parse_scalar("x^2", *x)}, Scalar(1)};
  sq.validate(Oracle{});
  CHECK(eq(pullback_section(sq, parse_scalar("y", *y)), parse_scalar("x^2", *x), *x));

  LineBundleMorphism ex{x, x, {Scalar::var(0)}, parse_scalar("exp(x)", *x)};
  CHECK(eq(pullback_section(ex, Scalar(1)), parse_scalar("exp(-x)", *x), *x));
}

TEST_CASE("morphism validation") {
  auto x = make_chart({"x"});
  LineBundleMorphism bad{x, x, {Scalar::var(0)}, Scalar::var(0)};
  CHECK_THROWS_AS(bad.validate(Oracle{}), WitnessError);
  LineBundleMorphism out{x, x, {parse_scalar("2*x", *x)}, Scalar(1)};
  CHECK_THROWS_AS(out.validate(Oracle{}), WitnessError);
}

TEST_CASE("pushforward examples") {
  auto x = make_chart({"x"});
  Oracle o;
  LineBundleMorphism ex{x, x, {Scalar::var(0)}, parse_scalar("exp(x)", *x)};
  for (const auto& p : o.points(*x)) {
    auto v = pushforward_derivation(ex, Derivation::delta(1, 0), p);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(-1.0));
    auto u = pushforward_derivation(ex, Derivation::one(1), p);
    CHECK(u[0] == doctest::Approx(0.0));
    CHECK(u[1] == doctest::Approx(1.0));
    Derivation D({parse_scalar("sin(x)", *x)}, parse_scalar("x", *x));
    auto w = pushforward_derivation(identity_morphism(x), D, p);
    CHECK(w == evaluate(D, p));
  }
  // F*(0,1) = e^{-x}(-dx, 1) for the exponential factor.
  Jet1 pb = pullback_jet(ex, Jet1({Scalar()}, 1));
  CHECK(eq(pb, Jet1({parse_scalar("-exp(-x)", *x)}, parse_scalar("exp(-x)", *x)), *x));
}

TEST_CASE("property: adjointness, prolongation and functoriality of morphisms") {
  auto src = make_chart({"x", "y"});
  auto mid = make_chart({"u", "v", "w"}, {Domain::interval(-3, 3), Domain::interval(-3, 3), Domain::interval(-3, 3)});
  auto tgt = make_chart({"r"}, {Domain::interval(-10, 10)});
  LineBundleMorphism F{src, mid, {parse_scalar("x*y", *src), parse_scalar("sin(x) + y", *src), parse_scalar("x^2", *src)},
                       parse_scalar("2 + cos(x*y)", *src)};
  LineBundleMorphism G{mid, tgt, {parse_scalar("u - v*w", *mid)}, parse_scalar("exp(u/3)", *mid)};
  Oracle o{3, 16, 1e-9, 1e-9};
  F.validate(o);
  G.validate(o);
  RandomGen gs(11, 2), gm(12, 3);
  auto pts = o.points(*src);
  for (int k = 0; k < 10; ++k) {
    Derivation D = gs.derivation(2);
    Jet1 psi = gm.jet(2);
    Scalar lam = gm.scalar(2);
    Jet1 pulled = pullback_jet(F, psi);
    CHECK(eq(pullback_jet(F, jet_prolong(lam, 3)), jet_prolong(pullback_section(F, lam), 2), *src));
    for (const auto& p : pts) {
      auto push = pushforward_derivation(F, D, p);
      std::vector<double> Fp;
      for (const auto& b : F.base) Fp.push_back(evaluate(b, p));
      auto psiv = evaluate(psi, Fp);
      double lhs = 0.0;
      for (std::size_t A = 0; A < push.size(); ++A) lhs += push[A] * psiv[A];
      // Target-fiber values pull back through division by c.
      double rhs = evaluate(jet_pairing(D, pulled), p) * evaluate(F.c, p);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
      // (G after F)_* = G_* after F_* at a point.
      LineBundleMorphism GF = compose(G, F);
      auto direct = pushforward_derivation(GF, D, p);
      Derivation pushed_const(std::vector<Scalar>(3), Scalar());
      for (std::size_t i = 0; i < 3; ++i) pushed_const.X[i] = Scalar::constant(mpq_class(push[i]));
      pushed_const.a = Scalar::constant(mpq_class(push[3]));
      auto chained = pushforward_derivation(G, pushed_const, Fp);
      for (std::size_t A = 0; A < direct.size(); ++A) CHECK(direct[A] == doctest::Approx(chained[A]).epsilon(1e-9));
    }
  }
}

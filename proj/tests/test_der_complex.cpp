#include <doctest.h>

#include "omni/der_complex.hpp"
#include "omni/random.hpp"

using namespace omni;

namespace {
Chart chart_of(std::size_t n) {
  std::vector<std::string> names{"x", "y", "z"};
  names.resize(n);
  return Chart(names);
}

bool feq(const LForm& a, const LForm& b, const Chart& c) { return forms_equal(a, b, c, Oracle{}).equal; }

LForm zero_like(const LForm& w) { return LForm(w.dim(), w.degree()); }
}  // namespace

TEST_CASE("d_D examples") {
  Chart x({"x"});
  Scalar f = parse_scalar("x^2", x);
  CHECK(feq(d_D(LForm::scalar(1, f)), LForm::from_jet(jet_prolong(f, 1)), x));

  Chart xy({"x", "y"});
  LForm g = LForm::scalar(2, parse_scalar("x*y", xy));
  CHECK(feq(d_D(d_D(g)), LForm(2, 2), xy));

  // (eta_x, g) = (x, x^2): slot (delta_x, 1) is delta_x(x^2) - 1(x) = x.
  LForm w = LForm::from_jet(Jet1({parse_scalar("x", x)}, parse_scalar("x^2", x)));
  LForm dw = d_D(w);
  REQUIRE(dw.size() == 1);
  CHECK(scalars_equal(dw.get({0, 1}), parse_scalar("x", x), x, Oracle{}));
  CHECK_THROWS_AS(d_D(LForm(1, 2)), Error);
}

TEST_CASE("contraction examples") {
  Chart xy({"x", "y"});
  Scalar f = parse_scalar("exp(x)*y", xy);
  LForm jf = LForm::from_jet(jet_prolong(f, 2));
  CHECK(scalars_equal(contract(Derivation::one(2), jf).at(0), f, xy, Oracle{}));

  Chart x({"x"});
  LForm h(1, 2);
  Scalar hv = parse_scalar("sin(x)", x);
  h.set({0, 1}, hv);
  LForm ih = contract(Derivation::delta(1, 0), h);
  CHECK(feq(ih, LForm::from_jet(Jet1({Scalar()}, hv)), x));
  CHECK_THROWS_AS(contract(Derivation::one(1), LForm(1, 0)), Error);
}

TEST_CASE("Lie derivative examples") {
  Chart x({"x"});
  Scalar f = parse_scalar("x^3 + cos(x)", x);
  LForm jf = LForm::from_jet(jet_prolong(f, 1));
  CHECK(feq(lie_derivative(Derivation::one(1), jf), jf, x));
  LForm s = LForm::scalar(1, parse_scalar("x", x));
  Derivation dx = Derivation::delta(1, 0);
  CHECK(feq(lie_derivative(dx, d_D(s)), d_D(lie_derivative(dx, s)), x));
}

TEST_CASE("precontact and cocycle correspondence") {
  Chart xy({"x", "y"});
  Oracle o;
  CHECK(feq(cocycle_from_precontact({Scalar(), Scalar()}), LForm(2, 2), xy));
  auto theta0 = precontact_from_cocycle(LForm(2, 2), xy, o);
  for (const auto& t : theta0) CHECK(t.is_zero());

  // theta = -x dx + dy: hand Koszul gives omega_{x,1} = -x, omega_{y,1} = 1, omega_{x,y} = 0.
  std::vector<Scalar> theta{parse_scalar("-x", xy), Scalar(1)};
  LForm w = cocycle_from_precontact(theta);
  CHECK(scalars_equal(w.get({0, 1}), Scalar(), xy, o));
  CHECK(scalars_equal(w.get({0, 2}), parse_scalar("-x", xy), xy, o));
  CHECK(scalars_equal(w.get({1, 2}), Scalar(1), xy, o));
  auto back = precontact_from_cocycle(w, xy, o);
  for (std::size_t i = 0; i < 2; ++i) CHECK(scalars_equal(back[i], theta[i], xy, o));

  LForm bad(2, 2);
  bad.set({0, 1}, parse_scalar("x", xy));
  CHECK_THROWS_AS(precontact_from_cocycle(bad, xy, o), WitnessError);

  // Nowhere-zero theta gives a nowhere-zero cocycle.
  Chart xyz({"x", "y", "z"});
  std::vector<Scalar> contact{parse_scalar("-y", xyz), Scalar(), Scalar(1)};
  LForm wc = cocycle_from_precontact(contact);
  for (const auto& p : o.points(xyz)) CHECK(evaluate_matrix(wc, p).max_abs() > 0.5);
}

TEST_CASE("form kernels") {
  Chart xyz({"x", "y", "z"});
  Oracle o;
  LForm wc = cocycle_from_precontact({parse_scalar("-y", xyz), Scalar(), Scalar(1)});
  for (const auto& p : o.points(xyz)) {
    auto k = form_kernel_at_point(wc, p, o.atol);
    CHECK(k.kernel.cols() == 0);
    CHECK(k.null_distribution.cols() == 0);
  }
  auto k0 = form_kernel_at_point(LForm(3, 2), {0.1, 0.2, 0.3}, 1e-9);
  CHECK(k0.kernel.cols() == 4);
  CHECK(k0.null_distribution.cols() == 3);
  // theta = dx on (x, y): kernel of omega is spanned by delta_y, its null distribution by d/dy.
  Chart xy({"x", "y"});
  LForm wx = cocycle_from_precontact({Scalar(1), Scalar()});
  auto kx = form_kernel_at_point(wx, {0.3, -0.2}, 1e-9);
  REQUIRE(kx.kernel.cols() == 1);
  CHECK(std::abs(kx.kernel(0, 0)) < 1e-12);
  CHECK(std::abs(kx.kernel(2, 0)) < 1e-12);
  CHECK(kx.null_distribution.cols() == 1);
}

TEST_CASE("degree-1 forms and jets share components") {
  Chart xy({"x", "y"});
  RandomGen gen(5, 2);
  for (int k = 0; k < 10; ++k) {
    Jet1 j = gen.jet(2);
    LForm w = LForm::from_jet(j);
    Jet1 back = w.to_jet();
    for (std::size_t A = 0; A <= 2; ++A) {
      CHECK(structurally_equal(w.at(A), j[A]));
      CHECK(structurally_equal(back[A], j[A]));
    }
  }
}

TEST_CASE("property: Cartan calculus and contracting homotopy") {
  for (std::size_t n = 1; n <= 3; ++n) {
    Chart c = chart_of(n);
    RandomGen gen(300 + n, n);
    const Derivation one = Derivation::one(n);
    for (int t = 0; t < 8; ++t) {
      for (std::size_t k = 0; k <= n + 1; ++k) {
        Derivation D = gen.derivation(1), E = gen.derivation(1);
        LForm w = gen.form(k, 2);
        // [i_1, d_D] = id
        LForm homotopy = zero_like(w);
        if (k <= n) homotopy = contract(one, d_D(w));
        if (k >= 1) homotopy = homotopy + d_D(contract(one, w));
        CHECK(feq(homotopy, w, c));
        if (k + 1 <= n) CHECK(feq(d_D(d_D(w)), LForm(n, k + 2), c));
        if (k >= 2) {
          CHECK(feq(contract(D, contract(E, w)), -contract(E, contract(D, w)), c));
          CHECK(feq(contract(D, contract(D, w)), LForm(n, k - 2), c));
        }
        if (k >= 1) {
          LForm lhs = lie_derivative(D, contract(E, w)) - contract(E, lie_derivative(D, w));
          CHECK(feq(lhs, contract(commutator(D, E), w), c));
        }
        if (k <= n) CHECK(feq(lie_derivative(D, d_D(w)), d_D(lie_derivative(D, w)), c));
        LForm ll = lie_derivative(D, lie_derivative(E, w)) - lie_derivative(E, lie_derivative(D, w));
        CHECK(feq(ll, lie_derivative(commutator(D, E), w), c));
        // Decomposition into ker d_D and ker i_1.
        if (k >= 1 && k <= n) {
          LForm closed = w - contract(one, d_D(w));
          CHECK(feq(d_D(closed), LForm(n, k + 1), c));
          LForm exact_part = contract(one, d_D(w));
          CHECK(feq(contract(one, exact_part), LForm(n, k - 1), c));
        }
      }
    }
  }
}

#include <doctest.h>

#include <algorithm>
#include <cctype>

#include "omni/random.hpp"
#include "omni/scalar.hpp"
#include "test_support.hpp"

using namespace omni;

namespace {
std::string strip(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}
}  // namespace

TEST_CASE("parse builds the expected trees") {
  Chart x({"x"});
  Scalar f = parse_scalar("x^2 + 1", x);
  CHECK(f.op() == Scalar::Op::Add);
  CHECK(f.lhs().op() == Scalar::Op::Pow);
  CHECK(f.lhs().index() == 2);
  CHECK(f.rhs().is_one());

  Chart xy({"x", "y"});
  Scalar g = parse_scalar("x*y - sin(x)", xy);
  CHECK(g.op() == Scalar::Op::Sub);
  CHECK(g.lhs().op() == Scalar::Op::Mul);
  CHECK(g.rhs().op() == Scalar::Op::Sin);
}

TEST_CASE("parse errors carry position or identifier") {
  Chart xy({"x", "y"});
  try {
    parse_scalar("x + z", xy);
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown identifier z") != std::string::npos);
    CHECK(e.position() == 4);
  }
  try {
    parse_scalar("x+", xy);
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(parse_scalar("x^y", xy), ParseError);
  CHECK_THROWS_AS(parse_scalar("tan(x)", xy), ParseError);
  CHECK_THROWS_AS(parse_scalar("(x", xy), ParseError);
  CHECK_THROWS_AS(parse_scalar("", xy), ParseError);
}

TEST_CASE("printer round trip") {
  Chart xyz({"x", "y", "z"});
  for (const char* s : {"x^2 + 1", "x*y - sin(x)", "-x^2", "(x + y)*(x - y)", "x - (y - z)", "exp(-x)/(1 + y^2)",
                        "2*x^-3", "0.5*x - 1/3", "(-2)^3 + x*-1", "cos(x*y)^2", "x/(y*z)", "x - -0.25"}) {
    Scalar t = parse_scalar(s, xyz);
    std::string printed = to_string(t, xyz);
    CHECK_MESSAGE(strip(printed) == strip(s), s);
    CHECK(structurally_equal(parse_scalar(printed, xyz), t));
  }
  RandomGen gen(7, 3);
  for (int k = 0; k < 200; ++k) {
    Scalar t = gen.scalar(4);
    CHECK(structurally_equal(parse_scalar(to_string(t, xyz), xyz), t));
  }
}

TEST_CASE("exact partial derivatives") {
  Chart xy({"x", "y"});
  Oracle o;
  CHECK(scalars_equal(differentiate(parse_scalar("x^2 + 1", xy), 0, 2), parse_scalar("2*x", xy), xy, o));
  CHECK(scalars_equal(differentiate(parse_scalar("x*y", xy), 1, 2), parse_scalar("x", xy), xy, o));
  CHECK(scalars_equal(differentiate(parse_scalar("sin(x)", xy), 0, 2), parse_scalar("cos(x)", xy), xy, o));
  CHECK_THROWS_AS(differentiate(parse_scalar("x", xy), 2, 2), Error);
  // Rational constants stay exact through differentiation.
  Scalar d = differentiate(parse_scalar("x^3/3", xy), 0, 2);
  CHECK(scalars_equal(d, parse_scalar("x^2", xy), xy, o));
}

TEST_CASE("evaluation and its error contract") {
  Chart x({"x"});
  Chart xy({"x", "y"});
  CHECK(evaluate(parse_scalar("x^2 + 1", x), {2.0}) == doctest::Approx(5.0));
  CHECK(evaluate(parse_scalar("x*y", xy), {3.0, -1.0}) == doctest::Approx(-3.0));
  CHECK_THROWS_AS(evaluate(parse_scalar("1/x", x), {0.0}), EvalError);
  try {
    evaluate(parse_scalar("1/x", x), {1e-12});
    FAIL("expected failure");
  } catch (const EvalError& e) {
    CHECK(e.point().size() == 1);
  }
  CHECK_THROWS_AS(evaluate(parse_scalar("x^-2", x), {0.0}), EvalError);
}

TEST_CASE("oracle equality verdicts") {
  Chart x({"x"});
  Oracle o;
  CHECK(scalars_equal(parse_scalar("sin(x)^2 + cos(x)^2", x), Scalar(1), x, o));
  CHECK(scalars_equal(parse_scalar("(x+1)^2", x), parse_scalar("x^2 + 2*x + 1", x), x, o));
  auto v = scalars_equal(parse_scalar("x", x), parse_scalar("x + 0.001", x), x, o);
  CHECK_FALSE(v.equal);
  REQUIRE(v.witness.size() == 1);
  CHECK(std::abs(v.lhs - v.rhs) == doctest::Approx(1e-3));
  CHECK_THROWS_AS(scalars_equal(parse_scalar("1/(x - x)", x), Scalar(0), x, o), EvalError);
}

TEST_CASE("oracle determinism and domains") {
  Chart c({"x", "s"}, {Domain{}, Domain::symmetric(0.5, 2.0)});
  Oracle o{42, 32, 1e-9, 1e-9};
  auto a = o.points(c);
  auto b = o.points(c);
  CHECK(a == b);
  for (const auto& p : a) {
    CHECK(std::abs(p[0]) <= 1.0);
    CHECK(std::abs(p[1]) >= 0.5);
    CHECK(std::abs(p[1]) <= 2.0);
  }
  Oracle other{43, 32, 1e-9, 1e-9};
  CHECK(other.points(c) != a);
  auto v1 = scalars_equal(parse_scalar("x*s", c), parse_scalar("x*s + x^4/1000", c), c, o);
  auto v2 = scalars_equal(parse_scalar("x*s", c), parse_scalar("x*s + x^4/1000", c), c, o);
  CHECK_FALSE(v1.equal);
  CHECK(v1.witness == v2.witness);
}

TEST_CASE("chart validation") {
  CHECK_THROWS_AS(Chart({"x", "x"}), Error);
  CHECK_THROWS_AS(Chart({}), Error);
  CHECK_THROWS_AS(Chart({"x"}, {Domain::interval(1.0, 1.0)}), Error);
  CHECK_THROWS_AS(Chart({"sin"}), Error);
}

TEST_CASE("property: mixed partials commute and Leibniz holds") {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(n);
    Chart c(names);
    Oracle o;
    RandomGen gen(100 + n, n);
    for (int k = 0; k < 60; ++k) {
      Scalar f = gen.scalar(3), g = gen.scalar(3);
      int i = gen.integer(0, static_cast<int>(n) - 1), j = gen.integer(0, static_cast<int>(n) - 1);
      CHECK(scalars_equal(differentiate(differentiate(f, i, n), j, n), differentiate(differentiate(f, j, n), i, n), c,
                          o));
      CHECK(scalars_equal(differentiate(f * g, i, n), differentiate(f, i, n) * g + f * differentiate(g, i, n), c, o));
    }
  }
}

TEST_CASE("symbolic derivatives agree with finite differences") {
  Chart c({"x", "y"});
  Oracle o{5, 8, 1e-9, 1e-9};
  RandomGen gen(9, 2);
  for (int k = 0; k < 50; ++k) {
    Scalar f = gen.scalar(3);
    for (const auto& p : o.points(c)) {
      for (int i = 0; i < 2; ++i) {
        double sym = evaluate(differentiate(f, i, 2), p);
        double num = test::numeric_partial(test::as_function(f), p, i);
        CHECK(sym == doctest::Approx(num).epsilon(1e-5).scale(1.0));
      }
    }
  }
}

TEST_CASE("substitution") {
  Chart xy({"x", "y"});
  Scalar f = parse_scalar("x*y + sin(y)", xy);
  Scalar g = substitute(f, {parse_scalar("y^2", xy), parse_scalar("x", xy)});
  CHECK(scalars_equal(g, parse_scalar("y^2*x + sin(x)", xy), xy, Oracle{}));
}

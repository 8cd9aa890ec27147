#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "omni/errors.hpp"

namespace omni {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

// Union of closed intervals a coordinate is sampled from.
struct Domain {
  std::vector<Interval> parts{Interval{}};

  static Domain interval(double lo, double hi) { return Domain{{Interval{lo, hi}}}; }
  // [-hi, -lo] U [lo, hi], used for coordinates that must avoid zero.
  static Domain symmetric(double lo, double hi) { return Domain{{Interval{-hi, -lo}, Interval{lo, hi}}}; }
  bool contains(double v) const;
  double total_length() const;
};

class Chart {
 public:
  explicit Chart(std::vector<std::string> names, std::vector<Domain> domains = {});

  std::size_t dim() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const Domain& domain(std::size_t i) const { return domains_.at(i); }
  const std::vector<Domain>& domains() const { return domains_; }
  // -1 when absent.
  int index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<Domain> domains_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> names, std::vector<Domain> domains = {});

struct Point {
  ChartPtr chart;
  std::vector<double> x;
};

namespace detail {
struct Node;
}

// Immutable expression tree over chart coordinates (referenced by index).
class Scalar {
 public:
  enum class Op : std::uint8_t { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Exp, Sin, Cos };

  Scalar();  // the constant 0
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  static Scalar constant(const mpq_class& q);
  static Scalar var(int index);

  Op op() const;
  bool is_const() const;
  bool is_zero() const;  // literally the constant 0
  bool is_one() const;
  const mpq_class& value() const;  // only for Const
  int index() const;               // Var index or Pow exponent
  Scalar lhs() const;
  Scalar rhs() const;
  std::size_t size() const;  // node count, shared nodes counted once
  int max_var() const;       // -1 for closed expressions

  const detail::Node* node() const { return node_.get(); }
  explicit Scalar(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}

  // Unsimplified constructors, used by the parser so text round-trips.
  static Scalar raw_binary(Op op, const Scalar& a, const Scalar& b);
  static Scalar raw_unary(Op op, const Scalar& a);
  static Scalar raw_pow(const Scalar& a, int exponent);

 private:
  std::shared_ptr<const detail::Node> node_;
};

Scalar operator+(const Scalar& a, const Scalar& b);
Scalar operator-(const Scalar& a, const Scalar& b);
Scalar operator*(const Scalar& a, const Scalar& b);
Scalar operator/(const Scalar& a, const Scalar& b);
Scalar operator-(const Scalar& a);
Scalar pow(const Scalar& a, int exponent);
Scalar exp(const Scalar& a);
Scalar sin(const Scalar& a);
Scalar cos(const Scalar& a);
inline Scalar& operator+=(Scalar& a, const Scalar& b) { return a = a + b; }
inline Scalar& operator-=(Scalar& a, const Scalar& b) { return a = a - b; }
inline Scalar& operator*=(Scalar& a, const Scalar& b) { return a = a * b; }

Scalar parse_scalar(const std::string& text, const Chart& chart);
std::string to_string(const Scalar& f, const Chart& chart);
// Printer without a chart: coordinates appear as z0, z1, ...
std::string to_string(const Scalar& f);
bool structurally_equal(const Scalar& a, const Scalar& b);

Scalar differentiate(const Scalar& f, int i, std::size_t dim);
// Replaces coordinate i by images[i] throughout.
Scalar substitute(const Scalar& f, const std::vector<Scalar>& images);

double evaluate(const Scalar& f, const std::vector<double>& p, double atol = 1e-9);
double evaluate(const Scalar& f, const Point& p, double atol = 1e-9);
// Values at every point; shared subtrees are evaluated once.
std::vector<double> evaluate_batch(const Scalar& f, const std::vector<std::vector<double>>& pts, double atol = 1e-9);

struct Oracle {
  std::uint64_t seed = 0;
  int samples = 32;
  double atol = 1e-9;
  double rtol = 1e-9;

  std::vector<std::vector<double>> points(const Chart& chart) const;
  bool close(double a, double b) const;
};

struct EqualityVerdict {
  bool equal = true;
  std::vector<double> witness;
  double lhs = 0.0;
  double rhs = 0.0;
  explicit operator bool() const { return equal; }
};

EqualityVerdict scalars_equal(const Scalar& f, const Scalar& g, const Chart& chart, const Oracle& o);
EqualityVerdict scalars_equal_at(const Scalar& f, const Scalar& g, const std::vector<std::vector<double>>& pts,
                                 const Oracle& o);
// |f| > atol at every oracle point; otherwise the offending point.
EqualityVerdict nonvanishing(const Scalar& f, const Chart& chart, const Oracle& o);

}  // namespace omni

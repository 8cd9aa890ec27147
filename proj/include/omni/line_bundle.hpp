#pragma once

#include <vector>

#include "omni/scalar.hpp"

namespace omni {

// Element of Der L in the frame (delta_1..delta_n, 1): symbol X plus the
// coefficient a of the identity derivation.
struct Derivation {
  std::vector<Scalar> X;
  Scalar a;

  Derivation() = default;
  Derivation(std::vector<Scalar> x, Scalar coeff) : X(std::move(x)), a(std::move(coeff)) {}
  static Derivation zero(std::size_t n) { return Derivation(std::vector<Scalar>(n), Scalar()); }
  static Derivation delta(std::size_t n, std::size_t i);
  static Derivation one(std::size_t n);
  // Frame element A: delta_A for A < n, the identity derivation for A == n.
  static Derivation frame(std::size_t n, std::size_t A);

  std::size_t dim() const { return X.size(); }
  // Component A over the (n+1)-frame.
  const Scalar& operator[](std::size_t A) const { return A < X.size() ? X[A] : a; }
  std::vector<Scalar> components() const;
};

// Element of J^1 L in the frame (dz^i (x) mu, j^1 mu).
struct Jet1 {
  std::vector<Scalar> eta;
  Scalar g;

  Jet1() = default;
  Jet1(std::vector<Scalar> e, Scalar coeff) : eta(std::move(e)), g(std::move(coeff)) {}
  static Jet1 zero(std::size_t n) { return Jet1(std::vector<Scalar>(n), Scalar()); }
  // Frame element A: dz^A (x) mu for A < n, j^1 mu for A == n.
  static Jet1 frame(std::size_t n, std::size_t A);

  std::size_t dim() const { return eta.size(); }
  const Scalar& operator[](std::size_t A) const { return A < eta.size() ? eta[A] : g; }
  std::vector<Scalar> components() const;
};

Derivation operator+(const Derivation& d, const Derivation& e);
Derivation operator-(const Derivation& d, const Derivation& e);
Derivation operator*(const Scalar& f, const Derivation& d);
Jet1 operator+(const Jet1& p, const Jet1& q);
Jet1 operator-(const Jet1& p, const Jet1& q);
Jet1 operator*(const Scalar& f, const Jet1& p);

// Sum_i X^i d_i f + a f.
Scalar apply_derivation(const Derivation& D, const Scalar& f);
// Vector field part only: Sum_i X^i d_i f.
Scalar apply_symbol(const Derivation& D, const Scalar& f);
Derivation commutator(const Derivation& D, const Derivation& E);
Scalar jet_pairing(const Derivation& D, const Jet1& psi);
Jet1 jet_prolong(const Scalar& f, std::size_t n);

Derivation derivation_from_components(const std::vector<Scalar>& c);
Jet1 jet_from_components(const std::vector<Scalar>& c);

// Regular line bundle morphism: base map and fiber factor c with
// F(mu_x) = c(x) mu'_{F(x)}.
struct LineBundleMorphism {
  ChartPtr source;
  ChartPtr target;
  std::vector<Scalar> base;  // one Scalar per target coordinate, over source coordinates
  Scalar c{1L};

  // Throws WitnessError when c vanishes or the base map leaves the target domain.
  void validate(const Oracle& o) const;
};

LineBundleMorphism identity_morphism(const ChartPtr& chart);
LineBundleMorphism compose(const LineBundleMorphism& G, const LineBundleMorphism& F);  // G after F

Scalar pullback_section(const LineBundleMorphism& F, const Scalar& f_target);
// Components (Y^1..Y^n', b) of F_* Delta at F(p).
std::vector<double> pushforward_derivation(const LineBundleMorphism& F, const Derivation& D,
                                           const std::vector<double>& p, double atol = 1e-9);
Jet1 pullback_jet(const LineBundleMorphism& F, const Jet1& psi_target);

// Derivation/jet evaluated at a point as an (n+1)-vector.
std::vector<double> evaluate(const Derivation& D, const std::vector<double>& p, double atol = 1e-9);
std::vector<double> evaluate(const Jet1& psi, const std::vector<double>& p, double atol = 1e-9);

}  // namespace omni

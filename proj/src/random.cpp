#include "omni/random.hpp"

namespace omni {

int RandomGen::integer(int lo, int hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng_() % span);
}

Scalar RandomGen::scalar(int depth) {
  if (depth <= 0 || integer(0, 3) == 0) {
    if (integer(0, 2) == 0) return Scalar(integer(-3, 3));
    return Scalar::var(integer(0, static_cast<int>(n_) - 1));
  }
  // Operands are drawn in a fixed order so instances do not depend on the
  // compiler's argument evaluation order.
  int kind = integer(0, 7);
  Scalar a = scalar(depth - 1);
  switch (kind) {
    case 0:
    case 1:
      return a + scalar(depth - 1);
    case 2:
      return a - scalar(depth - 1);
    case 3:
    case 4:
      return a * scalar(depth - 1);
    case 5:
      return pow(a, 2);
    case 6:
      return sin(a);
    default:
      return integer(0, 1) ? cos(a) : exp(a * Scalar::constant(mpq_class(1, 2)));
  }
}

Derivation RandomGen::derivation(int depth) {
  Derivation d = Derivation::zero(n_);
  for (auto& x : d.X) x = scalar(depth);
  d.a = scalar(depth);
  return d;
}

Jet1 RandomGen::jet(int depth) {
  Jet1 j = Jet1::zero(n_);
  for (auto& e : j.eta) e = scalar(depth);
  j.g = scalar(depth);
  return j;
}

LForm RandomGen::form(std::size_t k, int depth) {
  LForm w(n_, k);
  for (std::size_t p = 0; p < w.size(); ++p) w.at(p) = scalar(depth);
  return w;
}

OmniSection RandomGen::omni(int depth) { return {derivation(depth), jet(depth)}; }

}  // namespace omni

#pragma once

#include <cstdint>
#include <random>

#include "omni/omni_algebroid.hpp"

namespace omni {

// Random instances for property checks. Trees avoid division so every
// instance evaluates everywhere on the chart.
class RandomGen {
 public:
  explicit RandomGen(std::uint64_t seed, std::size_t n) : rng_(seed), n_(n) {}

  Scalar scalar(int depth = 2);
  Derivation derivation(int depth = 2);
  Jet1 jet(int depth = 2);
  LForm form(std::size_t k, int depth = 2);
  OmniSection omni(int depth = 2);
  int integer(int lo, int hi);

 private:
  std::mt19937_64 rng_;
  std::size_t n_;
};

}  // namespace omni

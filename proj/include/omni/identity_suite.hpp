#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omni/omni_algebroid.hpp"

namespace omni {

struct IdentityTally {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::vector<Witness> witnesses;  // first failure only
  bool ok() const { return failures == 0; }
};

struct IdentitySuite {
  std::string name;
  std::size_t dim = 0;
  std::vector<IdentityTally> identities;
  bool ok() const;
};

// Randomized self-tests on the chart x, y, z (or x1..xn for n > 3).
// Cartan relations of the der-complex, d_D^2 = 0 and [i_1, d_D] = id;
// each trial draws (D, E, w) with deg w cycling through 0..n+1.
IdentitySuite cartan_suite(std::size_t n, int trials, std::uint64_t seed, const Oracle& o);
// Courant axioms of the Dorfman bracket on random section triples.
IdentitySuite courant_suite(std::size_t n, int trials, std::uint64_t seed, const Oracle& o);
// Upsilon is alternating and C-infinity linear on graphs of random 2-forms.
IdentitySuite upsilon_suite(std::size_t n, int trials, std::uint64_t seed, const Oracle& o);

ChartPtr standard_chart(std::size_t n);

}  // namespace omni

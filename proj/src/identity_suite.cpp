#include "omni/identity_suite.hpp"

#include "omni/random.hpp"
#include "omni/structures.hpp"

namespace omni {

namespace {

class Recorder {
 public:
  Recorder(IdentitySuite& s, const Chart& chart, const Oracle& o) : s_(s), chart_(chart), o_(o) {}

  IdentityTally& tally(const std::string& name) {
    for (auto& t : s_.identities)
      if (t.name == name) return t;
    s_.identities.push_back(IdentityTally{name, 0, 0, {}});
    return s_.identities.back();
  }

  void forms(const std::string& name, const LForm& a, const LForm& b) {
    auto& t = tally(name);
    ++t.instances;
    auto v = forms_equal(a, b, chart_, o_);
    if (!v.equal) fail(t, v.verdict, v.index);
  }

  void scalars(const std::string& name, const Scalar& a, const Scalar& b) {
    auto& t = tally(name);
    ++t.instances;
    auto v = scalars_equal(a, b, chart_, o_);
    if (!v.equal) fail(t, v, {});
  }

  void sections(const std::string& name, const OmniSection& a, const OmniSection& b) {
    auto& t = tally(name);
    ++t.instances;
    auto ca = a.components(), cb = b.components();
    for (std::size_t i = 0; i < ca.size(); ++i) {
      auto v = scalars_equal(ca[i], cb[i], chart_, o_);
      if (!v.equal) {
        fail(t, v, {static_cast<int>(i)});
        return;
      }
    }
  }

 private:
  void fail(IdentityTally& t, const EqualityVerdict& v, std::vector<int> idx) {
    if (t.failures++ == 0) t.witnesses.push_back(Witness{t.name, v.witness, std::move(idx), v.lhs - v.rhs});
  }

  IdentitySuite& s_;
  const Chart& chart_;
  const Oracle& o_;
};

}  // namespace

bool IdentitySuite::ok() const {
  for (const auto& t : identities)
    if (!t.ok()) return false;
  return true;
}

ChartPtr standard_chart(std::size_t n) {
  std::vector<std::string> names;
  if (n <= 3) {
    std::vector<std::string> base{"x", "y", "z"};
    names.assign(base.begin(), base.begin() + static_cast<long>(n));
  } else {
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  return make_chart(names);
}

IdentitySuite cartan_suite(std::size_t n, int trials, std::uint64_t seed, const Oracle& o) {
  IdentitySuite s{"cartan", n, {}};
  auto chart = standard_chart(n);
  Recorder rec(s, *chart, o);
  RandomGen gen(seed, n);
  const Derivation one = Derivation::one(n);
  for (int t = 0; t < trials; ++t) {
    const std::size_t k = static_cast<std::size_t>(t) % (n + 2);
    Derivation D = gen.derivation(1), E = gen.derivation(1);
    LForm w = gen.form(k, 2);
    LForm homotopy(n, k);
    if (k <= n) homotopy = contract(one, d_D(w));
    if (k >= 1) homotopy = homotopy + d_D(contract(one, w));
    rec.forms("[i_1, d_D] = id", homotopy, w);
    if (k + 1 <= n) rec.forms("d_D^2 = 0", d_D(d_D(w)), LForm(n, k + 2));
    if (k >= 2) rec.forms("[i_D, i_E] = 0", contract(D, contract(E, w)), -contract(E, contract(D, w)));
    if (k >= 1) {
      rec.forms("[L_D, i_E] = i_[D,E]", lie_derivative(D, contract(E, w)) - contract(E, lie_derivative(D, w)),
                contract(commutator(D, E), w));
      if (k <= n)
        rec.forms("L_D = [i_D, d_D]", lie_derivative(D, w), contract(D, d_D(w)) + d_D(contract(D, w)));
    }
    if (k <= n) rec.forms("[L_D, d_D] = 0", lie_derivative(D, d_D(w)), d_D(lie_derivative(D, w)));
    rec.forms("[L_D, L_E] = L_[D,E]", lie_derivative(D, lie_derivative(E, w)) - lie_derivative(E, lie_derivative(D, w)),
              lie_derivative(commutator(D, E), w));
  }
  return s;
}

IdentitySuite courant_suite(std::size_t n, int trials, std::uint64_t seed, const Oracle& o) {
  IdentitySuite s{"courant", n, {}};
  auto chart = standard_chart(n);
  Recorder rec(s, *chart, o);
  RandomGen gen(seed, n);
  for (int t = 0; t < trials; ++t) {
    OmniSection a = gen.omni(1), b = gen.omni(1), c = gen.omni(1);
    Scalar f = gen.scalar(2);
    Jet1 dp = d_D(LForm::scalar(n, omni_pairing(a, b))).to_jet();
    rec.sections("cour1 symmetric part", dorfman(a, b) + dorfman(b, a), OmniSection(Derivation::zero(n), dp));
    rec.sections("cour2 Leibniz", dorfman(a, dorfman(b, c)), dorfman(dorfman(a, b), c) + dorfman(b, dorfman(a, c)));
    rec.sections("cour3 anchor", dorfman(a, f * b), f * dorfman(a, b) + apply_symbol(a.D, f) * b);
    rec.scalars("cour4 invariance", apply_derivation(a.D, omni_pairing(b, c)),
                omni_pairing(dorfman(a, b), c) + omni_pairing(b, dorfman(a, c)));
  }
  return s;
}

IdentitySuite upsilon_suite(std::size_t n, int trials, std::uint64_t seed, const Oracle& o) {
  IdentitySuite s{"upsilon", n, {}};
  auto chart = standard_chart(n);
  Recorder rec(s, *chart, o);
  RandomGen gen(seed, n);
  const int m = static_cast<int>(n + 1);
  for (int t = 0; t < trials; ++t) {
    LForm omega = gen.form(2, 1);
    StructureFrame F = from_two_cocycle(chart, omega);
    int i = gen.integer(0, m - 1), j = gen.integer(0, m - 1), k = gen.integer(0, m - 1);
    Scalar f = gen.scalar(2);
    Scalar u = courant_jacobi_tensor(F, i, j, k, o);
    rec.scalars("Upsilon equals d_D omega", u, n >= 2 ? d_D(omega).get({i, j, k}) : Scalar());
    rec.scalars("Upsilon alternating (1,2)", u, -courant_jacobi_tensor(F, j, i, k, o));
    rec.scalars("Upsilon alternating (2,3)", u, -courant_jacobi_tensor(F, i, k, j, o));
    rec.scalars("Upsilon linear slot 1", courant_jacobi_value(f * F.gens[i], F.gens[j], F.gens[k]), f * u);
    rec.scalars("Upsilon linear slot 2", courant_jacobi_value(F.gens[i], f * F.gens[j], F.gens[k]), f * u);
    rec.scalars("Upsilon linear slot 3", courant_jacobi_value(F.gens[i], F.gens[j], f * F.gens[k]), f * u);
  }
  return s;
}

}  // namespace omni

#include "doctest.h"

#include <random>

#include "btstrata/padic.hpp"

using namespace bts;

namespace {

Elt random_integral(const FieldPtr& F, std::mt19937_64& rng, int max_digits = 3) {
  Elt x = F->zero();
  std::uniform_int_distribution<std::uint32_t> dig(0, F->p() - 1);
  for (int i = 0; i < F->degree(); ++i) {
    Elt c = F->zero();
    for (int k = 0; k < max_digits; ++k) c = c + F->from_int(dig(rng)).times_pi(k);
    Elt gi = F->one();
    for (int t = 0; t < i; ++t) gi = gi * F->gen();
    x = x + c * gi;
  }
  return x;
}

}  // namespace

TEST_CASE("tower construction basics") {
  auto F = TowerField::create(3, 1, 1, 8);
  CHECK(F->degree() == 2);
  CHECK(F->q() == 3);
  CHECK(F->residue_field().size() == 9);

  auto F4 = TowerField::create(3, 1, 2, 8);
  CHECK(F4->degree() == 4);

  CHECK_THROWS_AS(TowerField::create(2, 1, 1, 8), std::invalid_argument);
  CHECK_THROWS_AS(TowerField::create(9, 1, 1, 8), std::invalid_argument);
  CHECK_THROWS_AS(TowerField::create(3, 9, 2, 8), std::invalid_argument);  // degree 36 > 32
}

TEST_CASE("ring axioms on random samples") {
  auto F = TowerField::create(5, 1, 2, 10);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Elt a = random_integral(F, rng), b = random_integral(F, rng), c = random_integral(F, rng);
    CHECK((a + b).equals(b + a));
    CHECK(((a + b) + c).equals(a + (b + c)));
    CHECK((a * b).equals(b * a));
    CHECK(((a * b) * c).equals(a * (b * c)));
    CHECK((a * (b + c)).equals(a * b + a * c));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("inverse of units") {
  auto F = TowerField::create(3, 1, 2, 12);
  std::mt19937_64 rng(11);
  int done = 0;
  while (done < 30) {
    Elt a = random_integral(F, rng);
    if (a.valuation() != std::optional<int>(0)) continue;
    CHECK((a * a.inverse() - F->one()).is_zero());
    ++done;
  }
  // pi-shifted inverses
  Elt x = F->from_int(7).times_pi(2);
  Elt xi = x.inverse();
  CHECK((x * xi - F->one()).is_zero());
  CHECK(xi.valuation() == std::optional<int>(-2));
}

TEST_CASE("valuation semantics") {
  auto F = TowerField::create(3, 1, 1, 8);
  CHECK(F->one().valuation() == std::optional<int>(0));
  CHECK(F->from_int(9 * 2).valuation() == std::optional<int>(2));  // val(p^2 * unit) = 2
  CHECK(!F->zero().valuation().has_value());                       // +infinity signal
}

TEST_CASE("frobenius is a ring morphism fixing the prime field") {
  auto F = TowerField::create(3, 2, 2, 8);  // degree 8
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Elt a = random_integral(F, rng), b = random_integral(F, rng);
    Elt sa = F->frobenius(a, 1), sb = F->frobenius(b, 1);
    CHECK(F->frobenius(a + b, 1).equals(sa + sb));
    CHECK(F->frobenius(a * b, 1).equals(sa * sb));
  }
  // sigma fixes Q_p
  Elt u = F->from_int(17);
  CHECK(F->frobenius(u, 1).equals(u));
  // sigma^(2fm) = identity
  Elt a = random_integral(F, rng);
  CHECK(F->frobenius(a, F->degree()).equals(a));
  // sigma(x) = x^p on the residue field
  Elt g = F->gen();
  auto& k = F->residue_field();
  CHECK(F->frobenius(g, 1).to_residue() == k.frob(g.to_residue(), 1));
}

TEST_CASE("conjugation negates the trace-zero unit and is an involution") {
  for (auto [p, f, m] : {std::tuple<int, int, int>{3, 1, 1}, {3, 1, 2}, {5, 1, 2}, {3, 2, 1}}) {
    auto F = TowerField::create(p, f, m, 10);
    Elt t = F->skew_unit();
    CHECK(t.valuation() == std::optional<int>(0));
    CHECK((F->conj(t) + t).is_zero());
    if (m == 1) {  // conjugation is an involution on the E level itself
      std::mt19937_64 rng(17);
      for (int trial = 0; trial < 10; ++trial) {
        Elt a = random_integral(F, rng);
        CHECK(F->conj(F->conj(a)).equals(a));
      }
    }
  }
}

TEST_CASE("tau-fixed elements lie in the degree-2f subfield") {
  auto T = TowerField::create(3, 1, 2, 10);
  auto E = T->e_level();
  CHECK(E->degree() == 2);
  std::mt19937_64 rng(23);
  // embedded elements are tau-fixed
  for (int trial = 0; trial < 20; ++trial) {
    Elt e = random_integral(E, rng);
    Elt x = T->embed_from_e(e);
    CHECK(T->tau(x).equals(x));
  }
  // tau-averaged elements are tau-fixed and expressible over the embedded basis
  for (int trial = 0; trial < 10; ++trial) {
    Elt y = random_integral(T, rng);
    Elt x = y + T->tau(y);  // m = 2: tau has order 2
    CHECK(T->tau(x).equals(x));
    // solve x = c0 * 1 + c1 * rho with c_i in the prime-field span by checking
    // x against the embedded basis via a 2-step elimination on residues
    // (indirect check: tau-invariance of x minus its embedded reconstruction)
    // Reconstruct: residue of x lies in the embedded residue subfield.
    auto& kT = T->residue_field();
    auto& kE = E->residue_field();
    std::uint32_t xr = x.to_residue();
    bool in_sub = false;
    for (std::uint32_t v = 0; v < kE.size(); ++v)
      if (kT.embed(kE, v) == xr) in_sub = true;
    CHECK(in_sub);
  }
}

TEST_CASE("conjugation on the degree-2f subfield is sigma^f") {
  // sigma^f negates the trace-zero element of E, inside the level-2 tower
  auto T = TowerField::create(3, 1, 2, 10);
  Elt t = T->skew_unit();
  CHECK((T->frobenius(t, T->f()) + t).is_zero());
}

TEST_CASE("digit extraction and pi-power divmod") {
  auto F = TowerField::create(3, 1, 1, 8);
  Elt x = F->from_int(5 + 9 * 2);  // digits 2,1,2 base 3
  CHECK(x.digit_at(0, 0) == 2);
  CHECK(x.digit_at(0, 1) == 1);
  CHECK(x.digit_at(0, 2) == 2);
  auto [rem, quot] = x.divmod_pi_power(2);
  CHECK(rem.equals(F->from_int(5)));
  CHECK(quot.equals(F->from_int(2)));
  // negative shifts
  Elt y = x.times_pi(-1);
  auto [r2, q2] = y.divmod_pi_power(0);
  CHECK(r2.equals(F->from_int(2).times_pi(-1)));
  CHECK(q2.equals(F->from_int(1 + 3 * 2)));
}

TEST_CASE("precision guard raises instead of guessing") {
  auto F = TowerField::create(3, 1, 1, 8);
  Elt tiny = F->one().times_pi(-7);  // abs precision 1 after shift
  Elt z = tiny - tiny;               // zero, but known only mod pi^(1)
  CHECK_THROWS_AS((void)z.is_zero(), precision_error);
}

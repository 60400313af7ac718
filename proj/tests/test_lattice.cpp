#include "doctest.h"

#include <random>

#include "btstrata/lattice.hpp"

using namespace bts;

namespace {

Lattice random_lattice(const FieldPtr& F, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dig(0, F->p() - 1);
  std::uniform_int_distribution<int> ex(0, 2);
  while (true) {
    PMat g(F, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Elt c = F->zero();
        for (int k = 0; k < 3; ++k) c = c + F->from_int(dig(rng)).times_pi(k);
        for (int t = 0; t < F->degree() - 1 && dig(rng) == 0; ++t) c = c * F->gen();
        g.at(i, j) = c.times_pi(ex(rng));
      }
    try {
      return Lattice::from_generators(g);
    } catch (const std::invalid_argument&) {
      continue;  // singular draw
    }
  }
}

}  // namespace

TEST_CASE("hermite canonical form examples") {
  auto F = TowerField::create(3, 1, 1, 8);
  // identity stays identity
  Lattice L = Lattice::standard(F, 2);
  CHECK(L.basis().at(0, 0).equals(F->one()));
  CHECK(L.diag_exponents() == std::vector<int>{0, 0});

  // columns (pi*e1, e1+e2) -> diag (pi, 1) with reduced off-diagonal
  PMat g(F, 2, 2);
  g.at(0, 0) = F->pi();
  g.at(0, 1) = F->one();
  g.at(1, 1) = F->one();
  Lattice M = Lattice::from_generators(g);
  CHECK(M.diag_exponents() == std::vector<int>{1, 0});
  CHECK(M.basis().at(0, 1).equals(F->one()));

  // permuted columns give the same canonical form
  PMat g2(F, 2, 2);
  g2.at(0, 1) = F->pi();
  g2.at(0, 0) = F->one();
  g2.at(1, 0) = F->one();
  CHECK(Lattice::from_generators(g2) == M);
}

TEST_CASE("canonical form is GL(O)-invariant") {
  auto F = TowerField::create(3, 1, 2, 10);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::uint32_t> dig(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Lattice L = random_lattice(F, 3, rng);
    // right-multiply the basis by a random unimodular matrix (L * U with unit
    // diagonals, then a column permutation)
    PMat lo = PMat::identity(F, 3), up = PMat::identity(F, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i > j) lo.at(i, j) = F->from_int(dig(rng));
        if (i < j) up.at(i, j) = F->from_int(dig(rng));
      }
    PMat U = lo.times(up);
    PMat newgens = L.basis().times(U);
    std::swap(newgens.at(0, 0), newgens.at(0, 2));
    std::swap(newgens.at(1, 0), newgens.at(1, 2));
    std::swap(newgens.at(2, 0), newgens.at(2, 2));
    CHECK(Lattice::from_generators(newgens) == L);
    CHECK(Lattice::from_generators(L.basis()) == L);  // idempotent
  }
}

TEST_CASE("sum, intersection, scaling, index") {
  auto F = TowerField::create(3, 1, 1, 10);
  Lattice L = Lattice::standard(F, 2);
  CHECK(L.sum(L) == L);
  CHECK(L.intersect(L) == L);

  // intersect(diag(pi,1), diag(1,pi)) = diag(pi,pi)
  PMat a(F, 2, 2), b(F, 2, 2);
  a.at(0, 0) = F->pi();
  a.at(1, 1) = F->one();
  b.at(0, 0) = F->one();
  b.at(1, 1) = F->pi();
  Lattice A = Lattice::from_generators(a), B = Lattice::from_generators(b);
  Lattice I = A.intersect(B);
  CHECK(I.diag_exponents() == std::vector<int>{1, 1});
  CHECK(I == L.scaled(1));

  CHECK(L.scaled(1).index_in(L) == 2);        // n elementary divisors pi
  CHECK(L.index_in(L) == 0);
  PMat c(F, 2, 2);
  c.at(0, 0) = F->pi() * F->pi();
  c.at(1, 1) = F->one();
  CHECK(Lattice::from_generators(c).index_in(L) == 2);  // SNF divisors (pi^2, 1)

  CHECK_THROWS_AS(L.index_in(L.scaled(1)), std::invalid_argument);  // not contained
}

TEST_CASE("membership") {
  auto F = TowerField::create(3, 1, 1, 10);
  Lattice L = Lattice::standard(F, 2);
  std::vector<Elt> e1{F->one(), F->zero()};
  CHECK(L.contains(e1));
  std::vector<Elt> bad{F->one().times_pi(-1), F->zero()};
  CHECK(!L.contains(bad));
  // e1 + pi*e2 in diag(1, pi) lattice
  PMat d(F, 2, 2);
  d.at(0, 0) = F->one();
  d.at(1, 1) = F->pi();
  std::vector<Elt> v{F->one(), F->pi()};
  CHECK(Lattice::from_generators(d).contains(v));
}

TEST_CASE("index additivity and modular law on random instances") {
  auto F = TowerField::create(3, 1, 2, 10);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 15; ++trial) {
    Lattice A = random_lattice(F, 2, rng);
    Lattice B = A.sum(random_lattice(F, 2, rng));
    Lattice C = B.sum(random_lattice(F, 2, rng));
    CHECK(A.index_in(C) == A.index_in(B) + B.index_in(C));
    Lattice L1 = random_lattice(F, 2, rng), L2 = random_lattice(F, 2, rng);
    // second isomorphism: [L1+L2 : L1] = [L2 : L1 cap L2]
    CHECK(L1.index_in(L1.sum(L2)) == L1.intersect(L2).index_in(L2));
    // sum/intersect commute
    CHECK(L1.sum(L2) == L2.sum(L1));
    CHECK(L1.intersect(L2) == L2.intersect(L1));
  }
}

TEST_CASE("adapted basis for a sublattice") {
  auto F = TowerField::create(3, 1, 1, 10);
  Lattice L = Lattice::standard(F, 3);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    Lattice S = random_lattice(F, 3, rng);
    Lattice sub = S.intersect(L);  // contained in L
    auto [U, exps] = adapted_basis(L, sub);
    // span(U) = L and pi^exps * U spans sub
    CHECK(Lattice::from_generators(U) == L);
    PMat scaled = U;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) scaled.at(i, j) = U.at(i, j).times_pi(exps[j]);
    CHECK(Lattice::from_generators(scaled) == sub);
    for (size_t i = 1; i < exps.size(); ++i) CHECK(exps[i - 1] <= exps[i]);
  }
}

TEST_CASE("serialization round trip") {
  auto F = TowerField::create(3, 1, 2, 10);
  std::mt19937_64 rng(43);
  Lattice L = random_lattice(F, 2, rng);
  auto j = L.to_json();
  CHECK(Lattice::from_json(j) == L);
  CHECK(L.canonical_key() == Lattice::from_json(j).canonical_key());
}

TEST_CASE("tau image at level two") {
  auto F = TowerField::create(3, 1, 2, 10);
  std::mt19937_64 rng(47);
  Lattice L = random_lattice(F, 2, rng);
  CHECK(L.tau_image().tau_image() == L);  // tau has order m = 2
  CHECK(Lattice::standard(F, 2).is_tau_invariant());
}

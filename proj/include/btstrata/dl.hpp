#ifndef BTSTRATA_DL_HPP
#define BTSTRATA_DL_HPP

#include <functional>

#include "btstrata/finite_field.hpp"
#include "btstrata/weyl.hpp"

namespace bts {

// Finite skew-hermitian space over F_{q^2}: the form is linear in the first
// variable and q-power-semilinear in the second; gram satisfies
// gram^{(q)T} = -gram and is nondegenerate.
struct FiniteHermitianSpace {
  FqPtr F2;  // F_{q^2}
  std::uint32_t p = 3;
  int f = 1;  // q = p^f
  int d = 1;
  FqMat gram;
  int cls = 0;  // class of the source vertex lattice (reporting only)

  // gram = tbar * I_d for the least tbar with tbar^q = -tbar != 0
  static FiniteHermitianSpace standard(std::uint32_t p, int f, int d, int cls = 0);
};

// Nested pair of subspaces over the level-m extension, rows in RREF.
struct Flag {
  FqMat s1, s2;
};

struct FlagVerdict {
  bool closed = false;
  bool open_id = false;
  const char* name() const {
    if (!closed) return "none";
    return open_id ? "open-id" : "open-w";
  }
};

// level-m data: K = F_{q^{2m}}, embedded gram, conjugation exponents
struct LevelContext {
  FqPtr K;
  FqMat gramK;
  int conj_k = 1;   // x -> x^q is frob(conj_k)
  int twist_k = 0;  // x -> x^{q^{-2}} is frob(twist_k); 0 at m = 1
  int m = 1;
};

LevelContext level_context(const FiniteHermitianSpace& V, int m);

// annihilator under the semilinear form; dim d - dim U
FqMat curlyvee(const FqMat& U, const LevelContext& ctx);
// inverse of curlyvee as a map on subspaces
FqMat curlyvee_inv(const FqMat& U, const LevelContext& ctx);

// membership of a flag in the closed stratum and its open refinement;
// h_eff is h for class-0 data and n-h for class-1 data
FlagVerdict flag_membership(const Flag& fl, const FiniteHermitianSpace& V, int h_eff, int m);

struct DlCounts {
  unsigned long long closed = 0, open_id = 0, open_w = 0;
};

// Exhaustive count of level-m flags of the closed stratum, split by the open
// refinement.  Walks annihilator subspaces in pivot-pattern + lexicographic
// order; the Gaussian-binomial cost bound is checked against the budget
// before starting.  Invalid (t, h) parity yields all-zero counts.
DlCounts count_points(const FiniteHermitianSpace& V, int h_eff, int m, const Budget& budget,
                      int jobs = 1);

// same walk, single-threaded, invoking fn(flag, open_id) per closed flag
void for_each_closed_flag(const FiniteHermitianSpace& V, int h_eff, int m, const Budget& budget,
                          const std::function<void(const Flag&, bool)>& fn);

unsigned long long gaussian_binomial_u64(int n, int k, unsigned long long q);

}  // namespace bts

#endif

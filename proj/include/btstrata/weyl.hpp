#ifndef BTSTRATA_WEYL_HPP
#define BTSTRATA_WEYL_HPP

#include <vector>

#include "btstrata/common.hpp"

namespace bts {

// Permutation of {1..d} in one-line notation (perm[i] = image of i+1).
struct Perm {
  std::vector<int> img;  // values 1..d

  static Perm identity(int d);
  static Perm transposition(int d, int a, int b);
  int d() const { return static_cast<int>(img.size()); }
  int operator()(int x) const { return img[x - 1]; }
  Perm times(const Perm& o) const;  // (this*o)(x) = this(o(x))
  Perm inverse() const;
  int length() const;  // inversion count
  bool operator==(const Perm& o) const { return img == o.img; }
};

// Weyl datum for the symmetric group S_d with simple reflections s_1..s_{d-1},
// a subset I, an element w, and the diagram twist F = conjugation by the
// longest element (F(s_i) = s_{d-i}).
struct WeylDatum {
  int d = 1;
  std::vector<int> I;  // ascending, values in [1, d-1]
  Perm w;
};

std::vector<int> twist_subset(int d, const std::vector<int>& I);  // F(I)
// longest-element length of the parabolic W_J (sum over consecutive blocks)
int parabolic_length(int d, const std::vector<int>& J);
// minimal-length representative of W_I w W_{F(I)}
Perm min_double_coset_rep(const WeylDatum& datum);

// dimension of the flag-variety locus cut out by relative position w:
// l(w) + l(W_{F(I)}) - l(W_{I cap wF(I)w^{-1}}) for the minimal representative
int dimension_weyl(const WeylDatum& datum);

// no proper F-stable J < S contains W_I w
bool is_irreducible(const WeylDatum& datum);

// the datum attached to a closed stratum: d = t, parabolic fixing the flag
// dimension jumps (l+1, l+1+h_eff), and the jump-swapping word
struct StratumDatum {
  WeylDatum datum;       // with the chain word s_{l+1}...s_{l+h}
  Perm w_transposition;  // the transposition (l+1, l+h+1); same double coset
  int l = 0;
};
StratumDatum stratum_weyl_datum(int t, int h_eff);

}  // namespace bts

#endif

#ifndef BTSTRATA_FINITE_FIELD_HPP
#define BTSTRATA_FINITE_FIELD_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "btstrata/common.hpp"

namespace bts {

// Polynomial arithmetic over F_p with coefficient vectors (little-endian,
// values in [0,p)).  Used for defining-polynomial selection and for residue
// computations that must not depend on lookup tables.
namespace fpoly {

using Poly = std::vector<std::uint32_t>;

Poly trim(Poly a);
Poly add(const Poly& a, const Poly& b, std::uint32_t p);
Poly sub(const Poly& a, const Poly& b, std::uint32_t p);
Poly mul(const Poly& a, const Poly& b, std::uint32_t p);
Poly mod(Poly a, const Poly& f, std::uint32_t p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p);
Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);
// inverse of a modulo f (f irreducible), via extended euclid
Poly invmod(const Poly& a, const Poly& f, std::uint32_t p);
bool is_irreducible(const Poly& f, std::uint32_t p);

// The deterministic defining polynomial: the monic irreducible of degree d
// over F_p whose coefficient vector (c_0,...,c_{d-1}) has the smallest value
// as the base-p integer sum c_i p^i.
Poly min_irreducible(std::uint32_t p, int d);

}  // namespace fpoly

// F_{p^d} with log/exp multiplication tables.  Elements are packed integers
// sum c_i p^i < p^d.  Instances are interned and immutable; all methods are
// safe for concurrent use.
class Fq {
 public:
  static std::shared_ptr<const Fq> get(std::uint32_t p, int d);

  std::uint32_t p() const { return p_; }
  int degree() const { return d_; }
  std::uint32_t size() const { return size_; }
  const fpoly::Poly& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (add_table_.empty()) return add_slow(a, b);
    return add_table_[a * size_ + b];
  }
  std::uint32_t neg(std::uint32_t a) const { return neg_table_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return add(a, neg_table_[b]);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  // x -> x^(p^k)
  std::uint32_t frob(std::uint32_t a, int k) const;
  std::uint32_t generator() const { return gen_; }

  // Deterministic embedding of a subfield (sub.degree() | degree()):
  // the subfield generator is sent to the root of its modulus in this field
  // with the smallest packed value.
  std::uint32_t embed(const Fq& sub, std::uint32_t x) const;

  // packed <-> coefficient vector
  std::vector<std::uint32_t> unpack(std::uint32_t a) const;
  std::uint32_t pack(const std::vector<std::uint32_t>& c) const;

 private:
  Fq(std::uint32_t p, int d);
  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_;
  int d_;
  std::uint32_t size_;
  std::uint32_t gen_;
  fpoly::Poly modulus_;
  std::vector<std::uint32_t> exp_, log_;   // exp_ has 2(size-1) entries
  std::vector<std::uint32_t> neg_table_;
  std::vector<std::uint32_t> frob_table_;  // x -> x^p
  std::vector<std::uint32_t> add_table_;   // only for small fields
  mutable std::mutex embed_mutex_;
  mutable std::map<std::pair<std::uint32_t, int>, std::vector<std::uint32_t>> embed_cache_;
};

using FqPtr = std::shared_ptr<const Fq>;

// Dense matrix over Fq, row-major.  Rows usually span a subspace.
struct FqMat {
  const Fq* F = nullptr;
  int rows = 0, cols = 0;
  std::vector<std::uint32_t> a;

  FqMat() = default;
  FqMat(const Fq& field, int r, int c)
      : F(&field), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  std::uint32_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  std::uint32_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  FqMat transposed() const;
  FqMat times(const FqMat& other) const;
  // entrywise x -> x^(p^k)
  FqMat frob(int k) const;
};

// Reduced row echelon form in place; returns pivot column list (rank = size).
std::vector<int> rref(FqMat& m);
// Row space basis in canonical RREF form (zero rows dropped).
FqMat row_space(const FqMat& m);
// Null space {x : m x^T = 0}, as canonical RREF rows.
FqMat null_space(const FqMat& m);
// Intersection and sum of row spaces, canonical RREF rows.
FqMat row_space_sum(const FqMat& a, const FqMat& b);
FqMat row_space_intersect(const FqMat& a, const FqMat& b);
bool row_space_contains(const FqMat& space, const std::uint32_t* vec);
bool row_space_contains_all(const FqMat& space, const FqMat& vecs);
bool same_row_space(const FqMat& a, const FqMat& b);
int rank_of(FqMat m);

// All k-dimensional subspaces of F^n as canonical RREF matrices, in pivot
// pattern + lexicographic entry order.  Only for desk-scale n.
std::vector<FqMat> all_subspaces(const Fq& F, int n, int k, const Budget& budget);
// All subspaces of dimension k containing the row space of `floor` and
// contained in the row space of `ceil`.
std::vector<FqMat> subspaces_between(const FqMat& floor, const FqMat& ceil, int k,
                                     const Budget& budget);

}  // namespace bts

#endif

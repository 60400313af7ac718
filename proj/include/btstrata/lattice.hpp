#ifndef BTSTRATA_LATTICE_HPP
#define BTSTRATA_LATTICE_HPP

#include <span>
#include <string>
#include <vector>

#include "btstrata/padic.hpp"
#include "json.hpp"

namespace bts {

// Dense matrix of tower-field elements, row-major.
struct PMat {
  FieldPtr F;
  int rows = 0, cols = 0;
  std::vector<Elt> a;

  PMat() = default;
  PMat(FieldPtr f, int r, int c) : F(std::move(f)), rows(r), cols(c) {
    a.assign(static_cast<size_t>(r) * c, F->zero());
  }
  Elt& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Elt& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static PMat identity(FieldPtr f, int n);
  PMat times(const PMat& o) const;
  PMat transposed() const;
  PMat map_entries(const std::function<Elt(const Elt&)>& fn) const;
  std::vector<Elt> times_vec(std::span<const Elt> v) const;
};

// Gauss-Jordan inverse with valuation-minimal pivoting.
PMat inverse(const PMat& m);
// valuation of det (throws if singular to precision)
int det_valuation(const PMat& m);

// Full-rank lattice over the valuation ring, canonicalized by column Hermite
// form: basis matrix upper triangular, diagonal entries exact powers of pi,
// entries above a diagonal reduced modulo that diagonal's pi-power.  The
// canonical form is unique, so equality of lattices is equality of bases.
class Lattice {
 public:
  Lattice() = default;
  static Lattice standard(FieldPtr F, int n);
  // columns generate the lattice; rank-deficient input is rejected
  static Lattice from_generators(const PMat& gens);

  const FieldPtr& field() const { return basis_.F; }
  int dim() const { return basis_.rows; }
  const PMat& basis() const { return basis_; }
  std::vector<int> diag_exponents() const;
  int det_val() const;

  Lattice sum(const Lattice& o) const;
  Lattice intersect(const Lattice& o) const;
  Lattice scaled(int k) const;  // pi^k L
  bool contains(std::span<const Elt> v) const;
  bool contains_lattice(const Lattice& inner) const;
  // length of bigger/this; requires containment (checked)
  int index_in(const Lattice& bigger) const;
  Lattice tau_image() const;
  bool is_tau_invariant() const;
  bool operator==(const Lattice& o) const;

  std::string canonical_key() const;
  std::string compact_text() const;  // diag pi-exponents + off-diagonal digits
  nlohmann::json to_json() const;
  static Lattice from_json(const nlohmann::json& j);

 private:
  explicit Lattice(PMat basis) : basis_(std::move(basis)) {}
  PMat basis_;
};

// Column Hermite form of a spanning set (cols >= rows); returns the canonical
// n x n basis.  Used by Lattice and by enumeration code.
PMat hermite_basis(const PMat& gens);

// Adapted basis for a full-rank sublattice: returns (U, exps) with
// sub = span(pi^exps[j] * U_j) and span(U) = ambient.  U = ambient_basis * P
// for unimodular P; exponents ascend.
std::pair<PMat, std::vector<int>> adapted_basis(const Lattice& ambient, const Lattice& sub);

// element serialization helpers shared by lattice/point files
nlohmann::json elt_to_json(const Elt& x);
Elt elt_from_json(const FieldPtr& F, const nlohmann::json& j);
nlohmann::json field_to_json(const TowerField& F);
FieldPtr field_from_json(const nlohmann::json& j);

}  // namespace bts

#endif

#ifndef BTSTRATA_HERMITIAN_HPP
#define BTSTRATA_HERMITIAN_HPP

#include <optional>
#include <vector>

#include "btstrata/lattice.hpp"

namespace bts {

enum class FormKind { TI, TJ, Custom };
enum class Sign { Plus, Minus, Neither };

inline const char* sign_name(Sign s) {
  switch (s) {
    case Sign::Plus: return "+";
    case Sign::Minus: return "-";
    default: return "neither";
  }
}

// Skew-hermitian space (V, {.,.}) over a tower field: the form is linear in
// the first variable and sigma^f-semilinear in the second, with gram matrix
// G satisfying conj(G)^T = -G.  The two standard forms are t*I_n and
// t*diag(pi,1,...,1) for the deterministic trace-zero unit t.
class HermitianSpace {
 public:
  HermitianSpace() = default;  // empty; assign from a factory before use
  static HermitianSpace standard(FieldPtr F, int n, FormKind kind);
  // kind chosen by the parity rule: t*I_n when n-h-1 is even, else t*J_n
  static HermitianSpace standard_for(FieldPtr F, int n, int h);
  static HermitianSpace custom(FieldPtr F, PMat gram);

  const FieldPtr& field() const { return gram_.F; }
  int dim() const { return gram_.rows; }
  FormKind kind() const { return kind_; }
  const PMat& gram() const { return gram_; }

  Elt form(std::span<const Elt> x, std::span<const Elt> y) const;
  Lattice dual(const Lattice& L) const;

  // the same space over the level-m tower containing this field's level
  HermitianSpace embedded(const FieldPtr& bigger) const;

 private:
  HermitianSpace(PMat gram, FormKind kind) : gram_(std::move(gram)), kind_(kind) {}
  PMat gram_;
  FormKind kind_;
};

// Classification of a tau-invariant lattice as a vertex lattice.  A lattice
// may qualify for one class, both, or neither.
struct VertexInfo {
  bool is_vertex[2] = {false, false};
  int type[2] = {-1, -1};        // length of Lambda / pi^{i+1} dual
  Sign sign[2] = {Sign::Neither, Sign::Neither};
};

VertexInfo classify_vertex(const Lattice& L, const HermitianSpace& space, int n, int h);

struct VertexLattice {
  Lattice lat;   // over the E level of the tower
  int cls = 0;   // 0 or 1
  int type = 0;
  Sign sign = Sign::Neither;

  nlohmann::json to_json() const;
};

// All lattices between bottom and top (inclusive), walked by index-one
// descent from the top with canonical-form deduplication.
std::vector<Lattice> enumerate_lattices_between(const Lattice& bottom, const Lattice& top,
                                                const Budget& budget);

// the window pi^a L0 <= Lambda <= pi^{-a} L0
std::vector<Lattice> enumerate_lattices_in_window(const FieldPtr& F, int n, int window,
                                                  const Budget& budget);

// Vertex lattices inside the window, fully classified, one entry per
// (lattice, class) pair, ordered by canonical form then class.
std::vector<VertexLattice> enumerate_vertex_lattices(const HermitianSpace& space, int n, int h,
                                                     int window, const Budget& budget);

}  // namespace bts

#endif

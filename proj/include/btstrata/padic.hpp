#ifndef BTSTRATA_PADIC_HPP
#define BTSTRATA_PADIC_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "btstrata/common.hpp"
#include "btstrata/finite_field.hpp"

namespace bts {

class TowerField;
using FieldPtr = std::shared_ptr<const TowerField>;

// Element of an unramified tower field, stored to finite pi-adic precision
// (pi = p).  Coordinates live in the power basis of the defining root:
// value = p^shift * sum_i core[i] g^i, where each core[i] is a base-p digit
// vector of length prec.  Digits beyond prec are unknown.
class Elt {
 public:
  Elt() = default;

  const TowerField& field() const { return *F_; }
  int shift() const { return shift_; }
  int prec() const { return prec_; }
  // known modulo pi^abs_prec
  int abs_prec() const { return shift_ + prec_; }

  // pi-adic valuation; nullopt encodes "indistinguishable from zero".
  std::optional<int> valuation() const;
  // certified zero test; throws precision_error inside the guard band
  bool is_zero() const;
  bool is_unit() const { return valuation() == std::optional<int>(0); }

  Elt operator+(const Elt& o) const;
  Elt operator-(const Elt& o) const;
  Elt operator-() const;
  Elt operator*(const Elt& o) const;
  bool equals(const Elt& o) const { return (*this - o).is_zero(); }

  Elt inverse() const;                 // requires certified valuation
  Elt div(const Elt& o) const { return *this * o.inverse(); }
  Elt times_pi(int k) const;           // multiply by pi^k (shift adjust)

  // digit of the canonical expansion at absolute position pos for coefficient i;
  // throws precision_error past the known digits
  std::uint32_t digit_at(int coeff, int pos) const;
  // canonical residue r = x mod pi^e (digits at positions < e) and exact
  // quotient q = (x - r) / pi^e
  std::pair<Elt, Elt> divmod_pi_power(int e) const;
  Elt reduce_mod_pi_power(int e) const { return divmod_pi_power(e).first; }

  // residue-field reduction (element must be integral to certified precision)
  std::uint32_t to_residue() const;

  std::string to_string() const;  // diagnostic

 private:
  friend class TowerField;
  const TowerField* F_ = nullptr;
  int shift_ = 0;
  int prec_ = 0;
  std::vector<std::uint32_t> core_;  // degree() x prec_ digits, row-major

  Elt(const TowerField* F, int shift, int prec)
      : F_(F), shift_(shift), prec_(prec) {}
  void normalize();  // strip leading zero digit layers into shift_
  int core_val() const;  // first digit layer with a nonzero digit, or prec_
};

// A fixed unramified tower over Q_p of degree 2*f*m, with distinguished
// subfields of degree f and 2f.  The degree-2f subfield plays the role of the
// quadratic extension E; the full field is the finite stand-in for its
// maximal unramified extension at level m.  sigma is the absolute Frobenius
// (Hensel lift of x -> x^p); the conjugation of E over its index-2 subfield
// is sigma^f, and tau = sigma^{2f}.
//
// Instances are immutable and interned; elements hold plain pointers to them.
class TowerField : public std::enable_shared_from_this<TowerField> {
 public:
  static FieldPtr create(std::uint32_t p, int f, int m, int N);
  static constexpr int kGuard = 4;
  static constexpr int kMaxDegree = 32;

  std::uint32_t p() const { return p_; }
  int f() const { return f_; }
  int m() const { return m_; }
  int degree() const { return r_; }
  int precision() const { return N_; }
  const fpoly::Poly& defining_poly() const { return poly_; }
  // q = p^f (residue size of the index-2 subfield of E)
  std::uint64_t q() const;

  Elt zero() const;
  Elt one() const;
  Elt from_int(long v) const;
  Elt pi() const { return from_int(static_cast<long>(p_)); }
  Elt gen() const;

  Elt frobenius(const Elt& x, int k) const;
  Elt conj(const Elt& x) const { return frobenius(x, f_); }
  Elt tau(const Elt& x) const { return frobenius(x, 2 * f_); }

  // residue field F_{p^degree}
  const Fq& residue_field() const;
  FqPtr residue_field_ptr() const { return residue_; }
  Elt lift_residue(std::uint32_t v) const;  // canonical single-digit lift

  // the degree-2f level of the tower and its embedding into this field
  FieldPtr e_level() const;
  Elt embed_from_e(const Elt& x) const;

  // deterministic trace-zero unit t of the E-level field (t* = -t),
  // embedded into this field
  Elt skew_unit() const;

 private:
  TowerField(std::uint32_t p, int f, int m, int N);
  void init();
  friend class Elt;

  std::uint32_t p_;
  int f_, m_, r_, N_;
  fpoly::Poly poly_;                  // defining polynomial, coefficients in [0,p)
  FqPtr residue_;
  std::vector<std::vector<Elt>> sigma_pow_;  // sigma_pow_[k][i] = sigma^k(g^i), k in [0,r)
  FieldPtr e_level_;                  // null when m == 1
  std::vector<Elt> e_root_pow_;       // embedded powers of the E-level root
  Elt skew_unit_;                     // embedded trace-zero unit
};

}  // namespace bts

#endif

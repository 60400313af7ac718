#include "btstrata/lattice.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace bts {

PMat PMat::identity(FieldPtr f, int n) {
  PMat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

PMat PMat::times(const PMat& o) const {
  PMat r(F, rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Elt& v = at(i, k);
      if (!v.valuation() && v.is_zero()) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) = r.at(i, j) + v * o.at(k, j);
    }
  return r;
}

PMat PMat::transposed() const {
  PMat t(F, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

PMat PMat::map_entries(const std::function<Elt(const Elt&)>& fn) const {
  PMat r(F, rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = fn(a[i]);
  return r;
}

std::vector<Elt> PMat::times_vec(std::span<const Elt> v) const {
  std::vector<Elt> r(rows, F->zero());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r[i] = r[i] + at(i, j) * v[j];
  return r;
}

namespace {

// smallest valuation among remaining candidates; zero entries (certified) are
// skipped, uncertain ones raise precision_error via is_zero()
bool pick_min_val(const Elt& e, std::optional<int>& best) {
  auto v = e.valuation();
  if (!v) {
    e.is_zero();  // certify or throw
    return false;
  }
  if (!best || *v < *best) {
    best = *v;
    return true;
  }
  return false;
}

}  // namespace

PMat hermite_basis(const PMat& gens) {
  const int n = gens.rows;
  const int k = gens.cols;
  if (k < n) throw std::invalid_argument("hermite_basis: rank-deficient input");
  PMat w = gens;
  // columns [fixed, k) hold already-fixed pivot columns; process rows bottom-up
  int fixed = k;
  for (int i = n - 1; i >= 0; --i) {
    // choose the pivot among active columns: minimal valuation in row i,
    // lowest column index on ties
    int pcol = -1;
    std::optional<int> best;
    for (int j = 0; j < fixed; ++j)
      if (pick_min_val(w.at(i, j), best)) pcol = j;
    if (pcol < 0) throw std::invalid_argument("hermite_basis: rank-deficient input");
    --fixed;
    if (pcol != fixed)
      for (int r = 0; r < n; ++r) std::swap(w.at(r, pcol), w.at(r, fixed));
    const Elt pivot_inv = w.at(i, fixed).inverse();
    for (int j = 0; j < fixed; ++j) {
      const Elt& e = w.at(i, j);
      auto v = e.valuation();
      if (!v) {
        e.is_zero();
        continue;
      }
      Elt fct = e * pivot_inv;
      for (int r = 0; r <= i; ++r) w.at(r, j) = w.at(r, j) - fct * w.at(r, fixed);
    }
  }
  // remaining active columns must now be zero
  for (int j = 0; j < fixed; ++j)
    for (int r = 0; r < n; ++r)
      if (!w.at(r, j).is_zero()) throw invariant_error("hermite_basis: elimination left residue");
  // extract, normalize pivots to exact pi-powers, reduce off-diagonal
  PMat h(gens.F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h.at(i, j) = w.at(i, k - n + j);
  std::vector<int> exps(n);
  for (int j = 0; j < n; ++j) {
    auto v = h.at(j, j).valuation();
    if (!v) throw invariant_error("hermite_basis: zero pivot");
    exps[j] = *v;
    Elt unit_inv = h.at(j, j).times_pi(-*v).inverse();
    for (int r = 0; r <= j; ++r) h.at(r, j) = h.at(r, j) * unit_inv;
    h.at(j, j) = gens.F->one().times_pi(*v);
  }
  for (int i = n - 1; i >= 0; --i)
    for (int j = i + 1; j < n; ++j) {
      auto [rem, quot] = h.at(i, j).divmod_pi_power(exps[i]);
      for (int r = 0; r < i; ++r) h.at(r, j) = h.at(r, j) - quot * h.at(r, i);
      h.at(i, j) = rem;
    }
  return h;
}

PMat inverse(const PMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: non-square");
  const int n = m.rows;
  PMat w = m;
  PMat inv = PMat::identity(m.F, n);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int c = 0; c < n; ++c) {
    int prow = -1;
    std::optional<int> best;
    for (int i = c; i < n; ++i)
      if (pick_min_val(w.at(i, c), best)) prow = i;
    if (prow < 0) throw std::invalid_argument("inverse: singular matrix");
    if (prow != c)
      for (int j = 0; j < n; ++j) {
        std::swap(w.at(prow, j), w.at(c, j));
        std::swap(inv.at(prow, j), inv.at(c, j));
      }
    Elt pinv = w.at(c, c).inverse();
    for (int j = 0; j < n; ++j) {
      w.at(c, j) = w.at(c, j) * pinv;
      inv.at(c, j) = inv.at(c, j) * pinv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c) continue;
      const Elt f = w.at(i, c);
      auto v = f.valuation();
      if (!v) {
        f.is_zero();
        continue;
      }
      for (int j = 0; j < n; ++j) {
        w.at(i, j) = w.at(i, j) - f * w.at(c, j);
        inv.at(i, j) = inv.at(i, j) - f * inv.at(c, j);
      }
    }
  }
  return inv;
}

int det_valuation(const PMat& m) {
  // triangularize a copy, summing pivot valuations
  if (m.rows != m.cols) throw std::invalid_argument("det_valuation: non-square");
  PMat h = hermite_basis(m);
  int s = 0;
  for (int i = 0; i < m.rows; ++i) s += *h.at(i, i).valuation();
  return s;
}

// ---------------------------------------------------------------------------
// Lattice

Lattice Lattice::standard(FieldPtr F, int n) { return Lattice(PMat::identity(F, n)); }

Lattice Lattice::from_generators(const PMat& gens) { return Lattice(hermite_basis(gens)); }

std::vector<int> Lattice::diag_exponents() const {
  std::vector<int> e(dim());
  for (int i = 0; i < dim(); ++i) e[i] = *basis_.at(i, i).valuation();
  return e;
}

int Lattice::det_val() const {
  int s = 0;
  for (int e : diag_exponents()) s += e;
  return s;
}

Lattice Lattice::sum(const Lattice& o) const {
  const int n = dim();
  PMat g(field(), n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.at(i, j) = basis_.at(i, j);
      g.at(i, n + j) = o.basis_.at(i, j);
    }
  return from_generators(g);
}

namespace {
// dual with respect to the standard bilinear form x^T y: basis (M^{-1})^T
PMat std_dual_basis(const PMat& m) { return inverse(m).transposed(); }
}  // namespace

Lattice Lattice::intersect(const Lattice& o) const {
  // (L1 cap L2) = standard-dual of (L1* + L2*)
  PMat d1 = std_dual_basis(basis_);
  PMat d2 = std_dual_basis(o.basis_);
  const int n = dim();
  PMat g(field(), n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.at(i, j) = d1.at(i, j);
      g.at(i, n + j) = d2.at(i, j);
    }
  PMat dsum = hermite_basis(g);
  return from_generators(std_dual_basis(dsum));
}

Lattice Lattice::scaled(int k) const {
  PMat b = basis_;
  for (auto& e : b.a) e = e.times_pi(k);
  return Lattice(std::move(b));  // canonical form is preserved by scaling
}

bool Lattice::contains(std::span<const Elt> v) const {
  const int n = dim();
  std::vector<Elt> w(v.begin(), v.end());
  for (int i = n - 1; i >= 0; --i) {
    Elt num = w[i];
    int e = *basis_.at(i, i).valuation();
    auto [rem, quot] = num.divmod_pi_power(e);
    if (!rem.is_zero()) return false;
    for (int r = 0; r < i; ++r) w[r] = w[r] - quot * basis_.at(r, i);
    w[i] = field()->zero();
  }
  return true;
}

bool Lattice::contains_lattice(const Lattice& inner) const {
  const int n = dim();
  for (int j = 0; j < n; ++j) {
    std::vector<Elt> col(n, field()->zero());
    for (int i = 0; i < n; ++i) col[i] = inner.basis_.at(i, j);
    if (!contains(col)) return false;
  }
  return true;
}

int Lattice::index_in(const Lattice& bigger) const {
  if (!bigger.contains_lattice(*this))
    throw std::invalid_argument("index_in: lattice not contained in the bigger one");
  return det_val() - bigger.det_val();
}

Lattice Lattice::tau_image() const {
  const TowerField& F = *field();
  PMat b = basis_.map_entries([&](const Elt& x) { return F.tau(x); });
  return from_generators(b);
}

bool Lattice::is_tau_invariant() const { return tau_image() == *this; }

bool Lattice::operator==(const Lattice& o) const {
  if (dim() != o.dim() || field().get() != o.field().get()) return false;
  for (size_t i = 0; i < basis_.a.size(); ++i)
    if (!basis_.a[i].equals(o.basis_.a[i])) return false;
  return true;
}

std::string Lattice::canonical_key() const {
  std::string out;
  const int n = dim();
  const int r = field()->degree();
  out.reserve(static_cast<size_t>(n) * n * (r + 4));
  auto put_int = [&out](int v) {
    if (v < 0) {
      out.push_back('-');
      v = -v;
    }
    if (v >= 10) out += std::to_string(v);
    else out.push_back(static_cast<char>('0' + v));
  };
  auto exps = diag_exponents();
  for (int j = 0; j < n; ++j) {
    out.push_back('d');
    put_int(exps[j]);
    out.push_back(';');
    for (int i = 0; i < j; ++i) {
      const Elt& e = basis_.at(i, j);
      auto v = e.valuation();
      if (!v) {
        e.is_zero();  // certify before treating as zero
        out += "0|";
        continue;
      }
      out.push_back('e');
      put_int(*v);
      out.push_back(':');
      for (int c = 0; c < r; ++c)
        for (int pos = *v; pos < exps[i]; ++pos) {
          put_int(static_cast<int>(e.digit_at(c, pos)));
          out.push_back(',');
        }
      out.push_back('|');
    }
  }
  return out;
}

std::string Lattice::compact_text() const {
  std::ostringstream os;
  const int n = dim();
  const int r = field()->degree();
  auto exps = diag_exponents();
  os << "diag[";
  for (int j = 0; j < n; ++j) os << (j ? "," : "") << exps[j];
  os << "] off{";
  bool first = true;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const Elt& e = basis_.at(i, j);
      auto v = e.valuation();
      if (!v) continue;
      if (!first) os << " ";
      first = false;
      os << "(" << i << "," << j << ")=";
      for (int c = 0; c < r; ++c) {
        if (c) os << "+";
        os << "g^" << c << "*[";
        bool any = false;
        for (int pos = *v; pos < exps[i]; ++pos) {
          std::uint32_t d = e.digit_at(c, pos);
          if (d) {
            if (any) os << "+";
            os << d << "p^" << pos;
            any = true;
          }
        }
        if (!any) os << "0";
        os << "]";
      }
    }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// adapted basis via Smith elimination with tracked left transform

std::pair<PMat, std::vector<int>> adapted_basis(const Lattice& ambient, const Lattice& sub) {
  const int n = ambient.dim();
  FieldPtr F = ambient.field();
  if (!ambient.contains_lattice(sub))
    throw std::invalid_argument("adapted_basis: sub not contained in ambient");
  // S = ambient^{-1} * sub, integral
  PMat S = inverse(ambient.basis()).times(sub.basis());
  PMat P = PMat::identity(F, n);
  std::vector<int> exps(n, 0);
  for (int k = 0; k < n; ++k) {
    // global min-valuation pivot in the trailing submatrix
    int pi_ = -1, pj = -1;
    std::optional<int> best;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j)
        if (pick_min_val(S.at(i, j), best)) {
          pi_ = i;
          pj = j;
        }
    if (pi_ < 0) throw invariant_error("adapted_basis: singular inclusion");
    if (pi_ != k)
      for (int j = 0; j < n; ++j) {
        std::swap(S.at(pi_, j), S.at(k, j));  // row swap; P gets column swap
      }
    if (pi_ != k)
      for (int i = 0; i < n; ++i) std::swap(P.at(i, pi_), P.at(i, k));
    if (pj != k)
      for (int i = 0; i < n; ++i) std::swap(S.at(i, pj), S.at(i, k));
    // normalize pivot to an exact pi-power: scale row k by unit inverse
    int e = *S.at(k, k).valuation();
    Elt unit = S.at(k, k).times_pi(-e);
    Elt uinv = unit.inverse();
    for (int j = 0; j < n; ++j) S.at(k, j) = S.at(k, j) * uinv;
    for (int i = 0; i < n; ++i) P.at(i, k) = P.at(i, k) * unit;
    exps[k] = e;
    // clear column k below, tracking P, then row k to the right
    for (int i = k + 1; i < n; ++i) {
      const Elt f = S.at(i, k);
      auto v = f.valuation();
      if (!v) {
        f.is_zero();
        continue;
      }
      Elt fct = f.times_pi(-e);  // exact: val >= pivot val
      for (int j = 0; j < n; ++j) S.at(i, j) = S.at(i, j) - fct * S.at(k, j);
      for (int r = 0; r < n; ++r) P.at(r, k) = P.at(r, k) + fct * P.at(r, i);
    }
    for (int j = k + 1; j < n; ++j) {
      const Elt f = S.at(k, j);
      auto v = f.valuation();
      if (!v) {
        f.is_zero();
        continue;
      }
      Elt fct = f.times_pi(-e);
      for (int i = 0; i < n; ++i) S.at(i, j) = S.at(i, j) - fct * S.at(i, k);
    }
  }
  PMat U = ambient.basis().times(P);
  return {U, exps};
}

// ---------------------------------------------------------------------------
// serialization

nlohmann::json elt_to_json(const Elt& x) {
  const int r = x.field().degree();
  nlohmann::json coeffs = nlohmann::json::array();
  for (int i = 0; i < r; ++i) {
    nlohmann::json digs = nlohmann::json::array();
    for (int k = 0; k < x.prec(); ++k) digs.push_back(x.digit_at(i, x.shift() + k));
    coeffs.push_back(digs);
  }
  return {
      {"degree", r}, {"precision", x.prec()}, {"shift", x.shift()}, {"digits", coeffs}};
}

Elt elt_from_json(const FieldPtr& F, const nlohmann::json& j) {
  int prec = j.at("precision").get<int>();
  int shift = j.at("shift").get<int>();
  const auto& coeffs = j.at("digits");
  Elt g = F->gen();
  Elt acc = F->zero();
  Elt gi = F->one();
  for (int i = 0; i < F->degree(); ++i) {
    Elt ci = F->zero();
    const auto& digs = coeffs.at(i);
    for (int k = 0; k < std::min<int>(prec, static_cast<int>(digs.size())); ++k)
      ci = ci + F->from_int(digs.at(k).get<long>()).times_pi(k);
    acc = acc + ci * gi;
    gi = gi * g;
  }
  return acc.times_pi(shift);
}

nlohmann::json field_to_json(const TowerField& F) {
  nlohmann::json poly = nlohmann::json::array();
  for (auto c : F.defining_poly()) poly.push_back(c);
  return {{"p", F.p()},
          {"f", F.f()},
          {"m", F.m()},
          {"precision", F.precision()},
          {"degrees", {F.f(), 2 * F.f(), F.degree()}},
          {"poly", poly}};
}

FieldPtr field_from_json(const nlohmann::json& j) {
  return TowerField::create(j.at("p").get<std::uint32_t>(), j.at("f").get<int>(),
                            j.at("m").get<int>(), j.at("precision").get<int>());
}

nlohmann::json Lattice::to_json() const {
  nlohmann::json basis = nlohmann::json::array();
  for (int i = 0; i < dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < dim(); ++j) row.push_back(elt_to_json(basis_.at(i, j)));
    basis.push_back(row);
  }
  return {{"field", field_to_json(*field())}, {"dimension", dim()}, {"basis", basis}};
}

Lattice Lattice::from_json(const nlohmann::json& j) {
  FieldPtr F = field_from_json(j.at("field"));
  int n = j.at("dimension").get<int>();
  PMat b(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj) b.at(i, jj) = elt_from_json(F, j.at("basis").at(i).at(jj));
  return from_generators(b);
}

}  // namespace bts

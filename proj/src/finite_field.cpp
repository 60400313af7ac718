#include "btstrata/finite_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace bts {

namespace fpoly {

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly add(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    std::uint32_t v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = v % p;
  }
  return trim(std::move(r));
}

Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    std::uint32_t av = i < a.size() ? a[i] : 0;
    std::uint32_t bv = i < b.size() ? b[i] : 0;
    r[i] = (av + p - bv) % p;
  }
  return trim(std::move(r));
}

Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    std::uint64_t ai = a[i];
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + ai * b[j]) % p);
  }
  return trim(std::move(r));
}

namespace {
std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
  std::uint32_t t = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) t = static_cast<std::uint32_t>((std::uint64_t)t * base % p);
    base = static_cast<std::uint32_t>((std::uint64_t)base * base % p);
    e >>= 1;
  }
  return t;
}

// division with remainder: a = q*f + r
std::pair<Poly, Poly> divmod_poly(Poly a, const Poly& f, std::uint32_t p) {
  a = trim(std::move(a));
  const size_t df = f.size() - 1;
  const std::uint32_t lead_inv = fp_inv(f.back(), p);
  Poly q;
  if (a.size() > df) q.assign(a.size() - df, 0);
  while (a.size() > df) {
    std::uint32_t c = static_cast<std::uint32_t>((std::uint64_t)a.back() * lead_inv % p);
    size_t shift = a.size() - 1 - df;
    q[shift] = c;
    if (c != 0)
      for (size_t i = 0; i < f.size(); ++i)
        a[shift + i] = static_cast<std::uint32_t>(
            (a[shift + i] + p - (std::uint64_t)f[i] * c % p) % p);
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.size() <= df) break;
  }
  return {trim(std::move(q)), trim(std::move(a))};
}
}  // namespace

Poly mod(Poly a, const Poly& f, std::uint32_t p) {
  return divmod_poly(std::move(a), f, p).second;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  return mod(mul(a, b, p), f, p);
}

Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  base = mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  // normalize monic
  if (!a.empty() && a.back() != 1) {
    std::uint32_t inv = 1, base = a.back(), e = p - 2;
    while (e) {
      if (e & 1) inv = static_cast<std::uint32_t>((std::uint64_t)inv * base % p);
      base = static_cast<std::uint32_t>((std::uint64_t)base * base % p);
      e >>= 1;
    }
    for (auto& c : a) c = static_cast<std::uint32_t>((std::uint64_t)c * inv % p);
  }
  return a;
}

Poly invmod(const Poly& a, const Poly& f, std::uint32_t p) {
  Poly r0 = f, r1 = mod(a, f, p);
  Poly t0{}, t1{1};
  if (r1.empty()) throw std::invalid_argument("invmod of zero");
  while (r1.size() > 1) {
    auto [q, rem] = divmod_poly(r0, r1, p);
    Poly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
    if (r1.empty()) throw std::invalid_argument("invmod: not invertible");
  }
  // r1 is a nonzero constant; inverse = t1 / r1
  std::uint32_t cinv = fp_inv(r1[0], p);
  Poly res = t1;
  for (auto& x : res) x = static_cast<std::uint32_t>((std::uint64_t)x * cinv % p);
  return mod(std::move(res), f, p);
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  // x^(p^d) == x mod f, and gcd(x^(p^(d/l)) - x, f) == 1 for prime l | d
  Poly x{0, 1};
  Poly t = x;
  std::vector<Poly> powers(d + 1);  // powers[j] = x^(p^j) mod f
  powers[0] = x;
  for (int j = 1; j <= d; ++j) {
    t = powmod(t, p, f, p);
    powers[j] = t;
  }
  if (trim(sub(powers[d], x, p)).size() != 0) return false;
  for (int l = 2; l <= d; ++l) {
    if (d % l != 0) continue;
    bool prime = true;
    for (int k = 2; k * k <= l; ++k)
      if (l % k == 0) prime = false;
    if (!prime) continue;
    Poly g = gcd(sub(powers[d / l], x, p), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly min_irreducible(std::uint32_t p, int d) {
  if (d == 1) return Poly{0, 1};  // x
  std::uint64_t bound = 1;
  for (int i = 0; i < d; ++i) {
    bound *= p;
    if (bound > (1ull << 40)) throw std::invalid_argument("degree too large for defining polynomial search");
  }
  for (std::uint64_t v = 0; v < bound; ++v) {
    Poly f(d + 1, 0);
    std::uint64_t t = v;
    for (int i = 0; i < d; ++i) {
      f[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    f[d] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace fpoly

// ---------------------------------------------------------------------------

namespace {
std::mutex g_fq_mutex;
std::map<std::pair<std::uint32_t, int>, std::shared_ptr<const Fq>> g_fq_registry;

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t k = 2; (std::uint64_t)k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}
}  // namespace

FqPtr Fq::get(std::uint32_t p, int d) {
  if (!is_prime(p)) throw std::invalid_argument("Fq: p must be prime");
  if (d < 1) throw std::invalid_argument("Fq: degree must be positive");
  std::uint64_t size = 1;
  for (int i = 0; i < d; ++i) {
    size *= p;
    if (size > (1u << 21)) throw std::invalid_argument("Fq: field too large for table arithmetic");
  }
  std::lock_guard<std::mutex> lock(g_fq_mutex);
  auto key = std::make_pair(p, d);
  auto it = g_fq_registry.find(key);
  if (it != g_fq_registry.end()) return it->second;
  auto f = std::shared_ptr<const Fq>(new Fq(p, d));
  g_fq_registry[key] = f;
  return f;
}

Fq::Fq(std::uint32_t p, int d) : p_(p), d_(d) {
  std::uint64_t size = 1;
  for (int i = 0; i < d; ++i) size *= p;
  size_ = static_cast<std::uint32_t>(size);
  modulus_ = fpoly::min_irreducible(p, d);

  auto pack_poly = [&](const fpoly::Poly& a) {
    std::uint32_t v = 0, mult = 1;
    for (int i = 0; i < d_; ++i) {
      v += (i < (int)a.size() ? a[i] : 0) * mult;
      mult *= p_;
    }
    return v;
  };

  // find a generator of the multiplicative group
  std::vector<std::uint32_t> prime_factors;
  {
    std::uint32_t n = size_ - 1;
    for (std::uint32_t k = 2; (std::uint64_t)k * k <= n; ++k)
      if (n % k == 0) {
        prime_factors.push_back(k);
        while (n % k == 0) n /= k;
      }
    if (n > 1) prime_factors.push_back(n);
  }
  gen_ = 0;
  for (std::uint32_t cand = 1; cand < size_; ++cand) {
    fpoly::Poly cp;
    {
      std::uint32_t t = cand;
      for (int i = 0; i < d_; ++i) {
        cp.push_back(t % p_);
        t /= p_;
      }
      cp = fpoly::trim(std::move(cp));
    }
    bool ok = true;
    for (std::uint32_t l : prime_factors) {
      fpoly::Poly e = fpoly::powmod(cp, (size_ - 1) / l, modulus_, p_);
      if (e.size() == 1 && e[0] == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen_ = cand;
      break;
    }
  }
  if (gen_ == 0) throw std::logic_error("Fq: no generator found");

  // exp/log tables
  exp_.assign(2 * (size_ - 1), 0);
  log_.assign(size_, 0);
  fpoly::Poly gp;
  {
    std::uint32_t t = gen_;
    for (int i = 0; i < d_; ++i) {
      gp.push_back(t % p_);
      t /= p_;
    }
    gp = fpoly::trim(std::move(gp));
  }
  fpoly::Poly cur{1};
  for (std::uint32_t e = 0; e < size_ - 1; ++e) {
    std::uint32_t v = pack_poly(cur);
    exp_[e] = v;
    exp_[e + size_ - 1] = v;
    log_[v] = e;
    cur = fpoly::mulmod(cur, gp, modulus_, p_);
  }

  // negation
  neg_table_.assign(size_, 0);
  for (std::uint32_t x = 0; x < size_; ++x) {
    std::uint32_t v = 0, mult = 1, t = x;
    for (int i = 0; i < d_; ++i) {
      std::uint32_t c = t % p_;
      t /= p_;
      v += ((p_ - c) % p_) * mult;
      mult *= p_;
    }
    neg_table_[x] = v;
  }

  // frobenius x -> x^p
  frob_table_.assign(size_, 0);
  frob_table_[0] = 0;
  for (std::uint32_t x = 1; x < size_; ++x)
    frob_table_[x] = exp_[(std::uint64_t)log_[x] * p_ % (size_ - 1)];

  // full addition table for small fields
  if (size_ <= 512) {
    add_table_.assign((size_t)size_ * size_, 0);
    for (std::uint32_t x = 0; x < size_; ++x)
      for (std::uint32_t y = 0; y < size_; ++y) add_table_[(size_t)x * size_ + y] = add_slow(x, y);
  }
}

std::uint32_t Fq::add_slow(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t v = 0, mult = 1;
  for (int i = 0; i < d_; ++i) {
    std::uint32_t s = (a % p_) + (b % p_);
    if (s >= p_) s -= p_;
    v += s * mult;
    mult *= p_;
    a /= p_;
    b /= p_;
  }
  return v;
}

std::uint32_t Fq::inv(std::uint32_t a) const {
  if (a == 0) throw std::invalid_argument("Fq: inverse of zero");
  return exp_[(size_ - 1) - log_[a]];
}

std::uint32_t Fq::pow(std::uint32_t a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[(std::uint64_t)log_[a] * (e % (size_ - 1)) % (size_ - 1)];
}

std::uint32_t Fq::frob(std::uint32_t a, int k) const {
  k %= d_;
  if (k < 0) k += d_;
  for (int i = 0; i < k; ++i) a = frob_table_[a];
  return a;
}

std::vector<std::uint32_t> Fq::unpack(std::uint32_t a) const {
  std::vector<std::uint32_t> c(d_);
  for (int i = 0; i < d_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

std::uint32_t Fq::pack(const std::vector<std::uint32_t>& c) const {
  std::uint32_t v = 0, mult = 1;
  for (int i = 0; i < d_; ++i) {
    v += (i < (int)c.size() ? c[i] % p_ : 0) * mult;
    mult *= p_;
  }
  return v;
}

std::uint32_t Fq::embed(const Fq& sub, std::uint32_t x) const {
  if (sub.p_ != p_ || d_ % sub.d_ != 0)
    throw std::invalid_argument("Fq::embed: not a subfield");
  if (sub.d_ == d_) return x;
  std::lock_guard<std::mutex> lock(embed_mutex_);
  auto key = std::make_pair(sub.p_, sub.d_);
  auto it = embed_cache_.find(key);
  if (it == embed_cache_.end()) {
    // minimal packed root of sub.modulus() in this field
    std::uint32_t root = 0;
    bool found = false;
    for (std::uint32_t cand = 0; cand < size_ && !found; ++cand) {
      std::uint32_t acc = 0;  // evaluate sub.modulus() at cand via Horner
      const auto& f = sub.modulus();
      for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        acc = mul(acc, cand);
        if (f[i] != 0) acc = add(acc, f[i] % p_);
      }
      if (acc == 0) {
        root = cand;
        found = true;
      }
    }
    if (!found) throw std::logic_error("Fq::embed: no root of subfield modulus");
    std::vector<std::uint32_t> table(sub.size_);
    for (std::uint32_t v = 0; v < sub.size_; ++v) {
      auto c = sub.unpack(v);
      std::uint32_t acc = 0;
      for (int i = sub.d_ - 1; i >= 0; --i) {
        acc = mul(acc, root);
        if (c[i] != 0) acc = add(acc, c[i]);
      }
      table[v] = acc;
    }
    it = embed_cache_.emplace(key, std::move(table)).first;
  }
  return it->second[x];
}

// ---------------------------------------------------------------------------
// Matrices

FqMat FqMat::transposed() const {
  FqMat t(*F, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

FqMat FqMat::times(const FqMat& other) const {
  FqMat r(*F, rows, other.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      std::uint32_t v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < other.cols; ++j)
        r.at(i, j) = F->add(r.at(i, j), F->mul(v, other.at(k, j)));
    }
  return r;
}

FqMat FqMat::frob(int k) const {
  FqMat r = *this;
  for (auto& x : r.a) x = F->frob(x, k);
  return r;
}

std::vector<int> rref(FqMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pr = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
    std::uint32_t inv = m.F->inv(m.at(row, col));
    for (int j = col; j < m.cols; ++j) m.at(row, j) = m.F->mul(m.at(row, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      std::uint32_t v = m.at(i, col);
      if (!v) continue;
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = m.F->sub(m.at(i, j), m.F->mul(v, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

FqMat row_space(const FqMat& m) {
  FqMat c = m;
  auto piv = rref(c);
  FqMat r(*m.F, static_cast<int>(piv.size()), m.cols);
  for (int i = 0; i < r.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r.at(i, j) = c.at(i, j);
  return r;
}

FqMat null_space(const FqMat& m) {
  FqMat c = m;
  auto piv = rref(c);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : piv) is_pivot[p] = true;
  int nfree = m.cols - static_cast<int>(piv.size());
  FqMat ns(*m.F, nfree, m.cols);
  int r = 0;
  for (int col = 0; col < m.cols; ++col) {
    if (is_pivot[col]) continue;
    ns.at(r, col) = 1;
    for (size_t i = 0; i < piv.size(); ++i)
      ns.at(r, piv[i]) = m.F->neg(c.at(static_cast<int>(i), col));
    ++r;
  }
  return row_space(ns);
}

FqMat row_space_sum(const FqMat& a, const FqMat& b) {
  FqMat s(*a.F, a.rows + b.rows, a.cols);
  std::copy(a.a.begin(), a.a.end(), s.a.begin());
  std::copy(b.a.begin(), b.a.end(), s.a.begin() + a.a.size());
  return row_space(s);
}

FqMat row_space_intersect(const FqMat& a, const FqMat& b) {
  // x in both spans: x = u a = v b.  Solve (u,v) with u a - v b = 0.
  FqMat ra = row_space(a), rb = row_space(b);
  if (ra.rows == 0 || rb.rows == 0) return FqMat(*a.F, 0, a.cols);
  FqMat stacked(*a.F, ra.rows + rb.rows, a.cols);
  std::copy(ra.a.begin(), ra.a.end(), stacked.a.begin());
  std::copy(rb.a.begin(), rb.a.end(), stacked.a.begin() + ra.a.size());
  FqMat ker = null_space(stacked.transposed());
  // rows of ker are (u | v) with u*ra + v*rb = 0 -> intersection vector u*ra
  FqMat out(*a.F, ker.rows, a.cols);
  for (int i = 0; i < ker.rows; ++i)
    for (int k = 0; k < ra.rows; ++k) {
      std::uint32_t c = ker.at(i, k);
      if (!c) continue;
      for (int j = 0; j < a.cols; ++j)
        out.at(i, j) = a.F->add(out.at(i, j), a.F->mul(c, ra.at(k, j)));
    }
  return row_space(out);
}

bool row_space_contains(const FqMat& space, const std::uint32_t* vec) {
  // space assumed RREF
  std::vector<std::uint32_t> v(vec, vec + space.cols);
  for (int i = 0; i < space.rows; ++i) {
    int pc = -1;
    for (int j = 0; j < space.cols; ++j)
      if (space.at(i, j) != 0) {
        pc = j;
        break;
      }
    if (pc < 0) continue;
    std::uint32_t c = v[pc];
    if (!c) continue;
    for (int j = pc; j < space.cols; ++j)
      v[j] = space.F->sub(v[j], space.F->mul(c, space.at(i, j)));
  }
  for (auto x : v)
    if (x) return false;
  return true;
}

bool row_space_contains_all(const FqMat& space, const FqMat& vecs) {
  FqMat s = row_space(space);
  for (int i = 0; i < vecs.rows; ++i)
    if (!row_space_contains(s, &vecs.a[static_cast<size_t>(i) * vecs.cols])) return false;
  return true;
}

bool same_row_space(const FqMat& a, const FqMat& b) {
  FqMat ra = row_space(a), rb = row_space(b);
  return ra.rows == rb.rows && ra.a == rb.a;
}

int rank_of(FqMat m) { return static_cast<int>(rref(m).size()); }

namespace {

// iterate over RREF matrices with given pivot pattern; calls fn for each
template <typename Fn>
void sweep_pattern(const Fq& F, int n, const std::vector<int>& pivots, const Budget& budget,
                   Fn&& fn) {
  const int k = static_cast<int>(pivots.size());
  std::vector<int> free_cells;  // (row, col) encoded as row*n+col
  for (int i = 0; i < k; ++i)
    for (int j = pivots[i] + 1; j < n; ++j) {
      bool is_piv = false;
      for (int t = 0; t < k; ++t)
        if (pivots[t] == j) is_piv = true;
      if (!is_piv) free_cells.push_back(i * n + j);
    }
  FqMat m(F, k, n);
  for (int i = 0; i < k; ++i) m.at(i, pivots[i]) = 1;
  const size_t nf = free_cells.size();
  std::vector<std::uint32_t> vals(nf, 0);
  while (true) {
    budget.charge();
    fn(m);
    size_t pos = 0;
    while (pos < nf) {
      std::uint32_t v = vals[pos] + 1;
      if (v < F.size()) {
        vals[pos] = v;
        m.a[(size_t)(free_cells[pos] / n) * n + free_cells[pos] % n] = v;
        break;
      }
      vals[pos] = 0;
      m.a[(size_t)(free_cells[pos] / n) * n + free_cells[pos] % n] = 0;
      ++pos;
    }
    if (pos == nf) break;
  }
}

template <typename Fn>
void for_each_pattern(int n, int k, Fn&& fn) {
  if (k == 0) {
    std::vector<int> none;
    fn(none);
    return;
  }
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    fn(piv);
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

}  // namespace

std::vector<FqMat> all_subspaces(const Fq& F, int n, int k, const Budget& budget) {
  std::vector<FqMat> out;
  if (k < 0 || k > n) return out;
  for_each_pattern(n, k, [&](const std::vector<int>& piv) {
    sweep_pattern(F, n, piv, budget, [&](const FqMat& m) { out.push_back(m); });
  });
  return out;
}

std::vector<FqMat> subspaces_between(const FqMat& floor, const FqMat& ceil, int k,
                                     const Budget& budget) {
  const Fq& F = *ceil.F;
  FqMat fl = row_space(floor), cl = row_space(ceil);
  std::vector<FqMat> out;
  if (k < fl.rows || k > cl.rows) return out;
  // coordinates: ceil rows are a basis; floor in those coordinates
  // solve floor = C * ceil row-wise
  FqMat ceil_t = cl.transposed();
  // for each floor row, solve x * cl = row  (cl is RREF so back-substitute)
  FqMat floor_coords(F, fl.rows, cl.rows);
  for (int i = 0; i < fl.rows; ++i) {
    std::vector<std::uint32_t> v(fl.a.begin() + (size_t)i * fl.cols,
                                 fl.a.begin() + (size_t)(i + 1) * fl.cols);
    for (int r = 0; r < cl.rows; ++r) {
      int pc = -1;
      for (int j = 0; j < cl.cols; ++j)
        if (cl.at(r, j) != 0) {
          pc = j;
          break;
        }
      std::uint32_t c = v[pc];
      floor_coords.at(i, r) = c;
      if (!c) continue;
      for (int j = 0; j < cl.cols; ++j) v[j] = F.sub(v[j], F.mul(c, cl.at(r, j)));
    }
  }
  // subspaces of the quotient coordinate space of dim cl.rows containing
  // floor_coords' row space, of dim k: enumerate all dim-k subspaces of the
  // coordinate space and filter (fine at desk scale)
  auto cand = all_subspaces(F, cl.rows, k, budget);
  FqMat fc = row_space(floor_coords);
  for (auto& m : cand) {
    if (!row_space_contains_all(m, fc)) continue;
    out.push_back(row_space(m.times(cl)));
  }
  return out;
}

}  // namespace bts

#include "btstrata/padic.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <sstream>

namespace bts {

namespace {

bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t k = 2; (std::uint64_t)k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}

// carry-normalize a uint64 column accumulator into base-p digits (length n)
void carry_to_digits(std::uint32_t* out, std::uint64_t* acc, int n, std::uint32_t p) {
  std::uint64_t carry = 0;
  for (int k = 0; k < n; ++k) {
    std::uint64_t v = acc[k] + carry;
    out[k] = static_cast<std::uint32_t>(v % p);
    carry = v / p;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Elt

int Elt::core_val() const {
  const int r = F_->degree();
  for (int k = 0; k < prec_; ++k)
    for (int i = 0; i < r; ++i)
      if (core_[static_cast<size_t>(i) * prec_ + k] != 0) return k;
  return prec_;
}

void Elt::normalize() {
  int v = core_val();
  if (v == 0 || prec_ == 0) return;
  if (v == prec_) {  // core is zero: keep absolute precision, reset shift
    return;
  }
  const int r = F_->degree();
  std::vector<std::uint32_t> nc(static_cast<size_t>(r) * (prec_ - v));
  for (int i = 0; i < r; ++i)
    for (int k = v; k < prec_; ++k)
      nc[static_cast<size_t>(i) * (prec_ - v) + (k - v)] =
          core_[static_cast<size_t>(i) * prec_ + k];
  core_ = std::move(nc);
  shift_ += v;
  prec_ -= v;
}

std::optional<int> Elt::valuation() const {
  int v = core_val();
  if (v == prec_) return std::nullopt;
  return shift_ + v;
}

bool Elt::is_zero() const {
  if (core_val() < prec_) return false;
  if (abs_prec() < TowerField::kGuard)
    throw precision_error("zero test inside the guard band (known only mod pi^" +
                          std::to_string(abs_prec()) + ")");
  return true;
}

Elt Elt::operator+(const Elt& o) const {
  assert(F_ == o.F_);
  const int r = F_->degree();
  const int N = F_->precision();
  int s = std::min(shift_, o.shift_);
  int abs = std::min({abs_prec(), o.abs_prec(), s + N});
  int prec = std::max(abs - s, 0);
  Elt out(F_, s, prec);
  out.core_.assign(static_cast<size_t>(r) * prec, 0);
  static thread_local std::vector<std::uint64_t> acc;
  acc.assign(prec, 0);
  for (int i = 0; i < r; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    int off = shift_ - s;
    for (int k = 0; k < prec_ && off + k < prec; ++k)
      acc[off + k] += core_[static_cast<size_t>(i) * prec_ + k];
    off = o.shift_ - s;
    for (int k = 0; k < o.prec_ && off + k < prec; ++k)
      acc[off + k] += o.core_[static_cast<size_t>(i) * o.prec_ + k];
    carry_to_digits(&out.core_[static_cast<size_t>(i) * prec], acc.data(), prec, F_->p());
  }
  out.normalize();
  return out;
}

Elt Elt::operator-() const {
  const int r = F_->degree();
  const std::uint32_t p = F_->p();
  Elt out(F_, shift_, prec_);
  out.core_.assign(static_cast<size_t>(r) * prec_, 0);
  for (int i = 0; i < r; ++i) {
    std::uint32_t borrow = 0;
    for (int k = 0; k < prec_; ++k) {
      std::uint32_t d = core_[static_cast<size_t>(i) * prec_ + k] + borrow;
      if (d == 0) {
        out.core_[static_cast<size_t>(i) * prec_ + k] = 0;
        borrow = 0;
      } else {
        out.core_[static_cast<size_t>(i) * prec_ + k] = p - d;
        borrow = 1;
      }
    }
  }
  return out;
}

Elt Elt::operator-(const Elt& o) const { return *this + (-o); }

Elt Elt::operator*(const Elt& o) const {
  assert(F_ == o.F_);
  const int r = F_->degree();
  const int N = F_->precision();
  const std::uint32_t p = F_->p();
  int vx = core_val(), vy = o.core_val();
  int prec = std::min({prec_ + vy, o.prec_ + vx, N});
  prec = std::max(prec, 0);
  Elt out(F_, shift_ + o.shift_, prec);
  out.core_.assign(static_cast<size_t>(r) * prec, 0);
  if (prec == 0 || vx == prec_ || vy == o.prec_) {
    // one factor is zero to its precision: result is zero to computed precision
    out.normalize();
    return out;
  }
  // polynomial product with column accumulation, truncated at prec digits
  static thread_local std::vector<std::uint32_t> tmp;
  static thread_local std::vector<std::uint64_t> acc;
  tmp.assign(static_cast<size_t>(2 * r - 1) * prec, 0);
  for (int t = 0; t < 2 * r - 1; ++t) {
    acc.assign(prec, 0);
    bool any = false;
    for (int i = std::max(0, t - r + 1); i <= std::min(t, r - 1); ++i) {
      const int j = t - i;
      const std::uint32_t* xi = &core_[static_cast<size_t>(i) * prec_];
      const std::uint32_t* yj = &o.core_[static_cast<size_t>(j) * o.prec_];
      for (int a = 0; a < std::min(prec_, prec); ++a) {
        const std::uint32_t xa = xi[a];
        if (!xa) continue;
        any = true;
        const int bmax = std::min(o.prec_, prec - a);
        for (int b = 0; b < bmax; ++b) acc[a + b] += static_cast<std::uint64_t>(xa) * yj[b];
      }
    }
    if (any) carry_to_digits(&tmp[static_cast<size_t>(t) * prec], acc.data(), prec, p);
  }
  // reduce x^t for t >= r using x^r = -(c_0 + c_1 x + ... + c_{r-1} x^{r-1})
  const auto& f = F_->defining_poly();
  for (int t = 2 * r - 2; t >= r; --t) {
    std::uint32_t* ct = &tmp[static_cast<size_t>(t) * prec];
    bool any = false;
    for (int k = 0; k < prec; ++k)
      if (ct[k]) {
        any = true;
        break;
      }
    if (!any) continue;
    for (int i = 0; i < r; ++i) {
      const std::uint32_t c = f[i];
      if (!c) continue;
      // tmp[t-r+i] -= c * ct  (digitwise, base p)
      std::uint32_t* dst = &tmp[static_cast<size_t>(t - r + i) * prec];
      std::uint64_t borrow = 0;
      for (int k = 0; k < prec; ++k) {
        std::uint64_t sub = static_cast<std::uint64_t>(c) * ct[k] + borrow;
        std::uint64_t need = sub % p;
        borrow = sub / p;
        if (dst[k] >= need) {
          dst[k] -= static_cast<std::uint32_t>(need);
        } else {
          dst[k] = static_cast<std::uint32_t>(dst[k] + p - need);
          ++borrow;
        }
      }
    }
  }
  std::copy(tmp.begin(), tmp.begin() + static_cast<size_t>(r) * prec, out.core_.begin());
  out.normalize();
  return out;
}

Elt Elt::times_pi(int k) const {
  Elt out = *this;
  out.shift_ += k;
  return out;
}

Elt Elt::inverse() const {
  auto v = valuation();
  if (!v)
    throw precision_error("inverse of an element indistinguishable from zero");
  const int N = F_->precision();
  // unit part u = core shifted down by core_val
  Elt u = *this;
  u.normalize();
  int val = u.shift_;
  u.shift_ = 0;
  int uprec = u.prec_;
  // residue inverse as Newton seed
  const int r = F_->degree();
  fpoly::Poly u0(r, 0);
  for (int i = 0; i < r; ++i) u0[i] = u.core_[static_cast<size_t>(i) * u.prec_];
  fpoly::Poly z0 = fpoly::invmod(fpoly::trim(std::move(u0)), F_->defining_poly(), F_->p());
  Elt z(F_, 0, N);
  z.core_.assign(static_cast<size_t>(r) * N, 0);
  for (size_t i = 0; i < z0.size(); ++i) z.core_[i * N] = z0[i];
  // pad u to full precision as an exact representative for the iteration
  Elt ue(F_, 0, N);
  ue.core_.assign(static_cast<size_t>(r) * N, 0);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < uprec; ++k) ue.core_[static_cast<size_t>(i) * N + k] =
        u.core_[static_cast<size_t>(i) * uprec + k];
  Elt two = F_->from_int(2);
  int iters = 1;
  while ((1 << iters) < N) ++iters;
  ++iters;
  for (int it = 0; it < iters; ++it) z = z * (two - ue * z);
  z.prec_ = std::min(z.prec_, uprec);
  if (static_cast<int>(z.core_.size()) != r * z.prec_) {
    std::vector<std::uint32_t> nc(static_cast<size_t>(r) * z.prec_);
    int old = static_cast<int>(z.core_.size()) / r;
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < z.prec_; ++k)
        nc[static_cast<size_t>(i) * z.prec_ + k] = z.core_[static_cast<size_t>(i) * old + k];
    z.core_ = std::move(nc);
  }
  z.shift_ = -val;
  return z;
}

std::uint32_t Elt::digit_at(int coeff, int pos) const {
  if (pos < shift_) return 0;
  int k = pos - shift_;
  if (k >= prec_)
    throw precision_error("digit beyond known precision");
  return core_[static_cast<size_t>(coeff) * prec_ + k];
}

std::pair<Elt, Elt> Elt::divmod_pi_power(int e) const {
  const int r = F_->degree();
  int cut = std::max(0, std::min(prec_, e - shift_));
  Elt rem(F_, shift_, prec_);
  rem.core_.assign(static_cast<size_t>(r) * prec_, 0);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < cut; ++k)
      rem.core_[static_cast<size_t>(i) * prec_ + k] = core_[static_cast<size_t>(i) * prec_ + k];
  Elt quot(F_, shift_ + cut - e, prec_ - cut);
  quot.core_.assign(static_cast<size_t>(r) * (prec_ - cut), 0);
  for (int i = 0; i < r; ++i)
    for (int k = cut; k < prec_; ++k)
      quot.core_[static_cast<size_t>(i) * (prec_ - cut) + (k - cut)] =
          core_[static_cast<size_t>(i) * prec_ + k];
  rem.normalize();
  quot.normalize();
  return {rem, quot};
}

std::uint32_t Elt::to_residue() const {
  auto v = valuation();
  if (v && *v < 0) throw std::invalid_argument("to_residue: element not integral");
  if (!v || *v > 0) {
    if (!v && abs_prec() < 1)
      throw precision_error("to_residue: no digits known at position 0");
    return 0;
  }
  const int r = F_->degree();
  std::vector<std::uint32_t> c(r);
  for (int i = 0; i < r; ++i) c[i] = digit_at(i, 0);
  return F_->residue_field().pack(c);
}

std::string Elt::to_string() const {
  std::ostringstream os;
  os << "[shift=" << shift_ << " prec=" << prec_ << ";";
  const int r = F_->degree();
  for (int i = 0; i < r; ++i) {
    os << " c" << i << "=";
    for (int k = prec_ - 1; k >= 0; --k) os << core_[static_cast<size_t>(i) * prec_ + k];
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// TowerField

namespace {
std::mutex g_field_mutex;
std::map<std::tuple<std::uint32_t, int, int, int>, FieldPtr> g_field_registry;
}  // namespace

FieldPtr TowerField::create(std::uint32_t p, int f, int m, int N) {
  if (p == 2 || !is_prime_u32(p)) throw std::invalid_argument("p must be an odd prime");
  if (f < 1 || m < 1 || N < 1) throw std::invalid_argument("f, m, N must be positive");
  if (2 * f * m > kMaxDegree) throw std::invalid_argument("tower degree beyond the configured bound");
  auto key = std::make_tuple(p, f, m, N);
  {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto it = g_field_registry.find(key);
    if (it != g_field_registry.end()) return it->second;
  }
  // init outside the lock: for m > 1 it recursively creates the E level
  auto fld = FieldPtr(new TowerField(p, f, m, N));
  const_cast<TowerField*>(fld.get())->init();
  std::lock_guard<std::mutex> lock(g_field_mutex);
  auto [it, inserted] = g_field_registry.emplace(key, fld);
  return it->second;
}

TowerField::TowerField(std::uint32_t p, int f, int m, int N)
    : p_(p), f_(f), m_(m), r_(2 * f * m), N_(N) {}

std::uint64_t TowerField::q() const {
  std::uint64_t v = 1;
  for (int i = 0; i < f_; ++i) v *= p_;
  return v;
}

Elt TowerField::zero() const {
  Elt e(this, 0, N_);
  e.core_.assign(static_cast<size_t>(r_) * N_, 0);
  return e;
}

Elt TowerField::one() const { return from_int(1); }

Elt TowerField::from_int(long v) const {
  Elt e = zero();
  bool neg = v < 0;
  unsigned long uv = neg ? static_cast<unsigned long>(-v) : static_cast<unsigned long>(v);
  for (int k = 0; k < N_ && uv; ++k) {
    e.core_[k] = static_cast<std::uint32_t>(uv % p_);
    uv /= p_;
  }
  if (neg) e = -e;
  e.normalize();
  return e;
}

Elt TowerField::gen() const {
  Elt e = zero();
  if (r_ > 1) e.core_[static_cast<size_t>(1) * N_] = 1;
  else e.core_[0] = 1;
  e.normalize();
  return e;
}

const Fq& TowerField::residue_field() const {
  if (!residue_) throw std::invalid_argument("residue field too large for table arithmetic");
  return *residue_;
}

Elt TowerField::lift_residue(std::uint32_t v) const {
  auto c = residue_field().unpack(v);
  Elt e = zero();
  for (int i = 0; i < r_; ++i) e.core_[static_cast<size_t>(i) * N_] = c[i];
  e.normalize();
  return e;
}

Elt TowerField::frobenius(const Elt& x, int k) const {
  k %= r_;
  if (k < 0) k += r_;
  if (k == 0) return x;
  const auto& imgs = sigma_pow_[k];
  const int prec = x.prec_;
  Elt out(this, x.shift_, prec);
  out.core_.assign(static_cast<size_t>(r_) * prec, 0);
  if (prec == 0) return out;
  static thread_local std::vector<std::uint64_t> acc;
  for (int j = 0; j < r_; ++j) {
    acc.assign(prec, 0);
    bool any = false;
    for (int i = 0; i < r_; ++i) {
      const std::uint32_t* xi = &x.core_[static_cast<size_t>(i) * prec];
      const Elt& gi = imgs[i];
      const std::uint32_t* gj = &gi.core_[static_cast<size_t>(j) * gi.prec_];
      for (int a = 0; a < prec; ++a) {
        const std::uint32_t xa = xi[a];
        if (!xa) continue;
        any = true;
        const int bmax = prec - a;
        for (int b = 0; b < bmax; ++b) acc[a + b] += static_cast<std::uint64_t>(xa) * gj[b];
      }
    }
    if (any) carry_to_digits(&out.core_[static_cast<size_t>(j) * prec], acc.data(), prec, p_);
  }
  out.normalize();
  return out;
}

FieldPtr TowerField::e_level() const {
  if (m_ == 1) return shared_from_this();
  return e_level_;
}

Elt TowerField::embed_from_e(const Elt& x) const {
  if (m_ == 1) {
    assert(&x.field() == this);
    return x;
  }
  assert(&x.field() == e_level_.get());
  const int prec = x.prec_;
  const int re = 2 * f_;
  Elt out(this, x.shift_, prec);
  out.core_.assign(static_cast<size_t>(r_) * prec, 0);
  if (prec == 0) return out;
  static thread_local std::vector<std::uint64_t> acc;
  for (int j = 0; j < r_; ++j) {
    acc.assign(prec, 0);
    bool any = false;
    for (int i = 0; i < re; ++i) {
      const std::uint32_t* xi = &x.core_[static_cast<size_t>(i) * prec];
      const Elt& gi = e_root_pow_[i];
      const std::uint32_t* gj = &gi.core_[static_cast<size_t>(j) * gi.prec_];
      for (int a = 0; a < prec; ++a) {
        const std::uint32_t xa = xi[a];
        if (!xa) continue;
        any = true;
        for (int b = 0; b < prec - a; ++b) acc[a + b] += static_cast<std::uint64_t>(xa) * gj[b];
      }
    }
    if (any) carry_to_digits(&out.core_[static_cast<size_t>(j) * prec], acc.data(), prec, p_);
  }
  out.normalize();
  return out;
}

Elt TowerField::skew_unit() const { return skew_unit_; }

void TowerField::init() {
  poly_ = fpoly::min_irreducible(p_, r_);
  try {
    residue_ = Fq::get(p_, r_);
  } catch (const std::invalid_argument&) {
    residue_ = nullptr;  // field usable, residue table ops unavailable
  }
  if (residue_ && residue_->modulus() != poly_)
    throw invariant_error("residue modulus mismatch");

  // sigma(g) by Hensel lifting the p-power map of the residue field
  Elt g = gen();
  sigma_pow_.assign(r_, {});
  sigma_pow_[0].reserve(r_);
  Elt cur = one();
  for (int i = 0; i < r_; ++i) {
    sigma_pow_[0].push_back(cur);
    cur = cur * g;
  }
  if (r_ > 1) {
    Elt y = one();
    {
      // y = g^p
      std::uint32_t e = p_;
      Elt base = g;
      while (e) {
        if (e & 1) y = y * base;
        base = base * base;
        e >>= 1;
      }
    }
    auto poly_eval = [&](const Elt& x, bool derivative) {
      Elt acc = zero();
      if (!derivative) {
        for (int i = r_; i >= 0; --i) {
          acc = acc * x;
          long c = (i == r_) ? 1 : static_cast<long>(poly_[i]);
          if (c) acc = acc + from_int(c);
        }
      } else {
        for (int i = r_; i >= 1; --i) {
          acc = acc * x;
          long c = static_cast<long>(i) * ((i == r_) ? 1 : static_cast<long>(poly_[i]));
          if (c) acc = acc + from_int(c);
        }
      }
      return acc;
    };
    int iters = 1;
    while ((1 << iters) < N_) ++iters;
    iters += 2;
    for (int it = 0; it < iters; ++it) {
      Elt fy = poly_eval(y, false);
      Elt dfy = poly_eval(y, true);
      y = y - fy * dfy.inverse();
    }
    {
      auto check = poly_eval(y, false);
      if (check.core_val() < check.prec_)
        throw invariant_error("frobenius root lift did not converge");
    }
    Elt root = y;
    for (int k = 1; k < r_; ++k) {
      sigma_pow_[k].reserve(r_);
      Elt acc = one();
      for (int i = 0; i < r_; ++i) {
        sigma_pow_[k].push_back(acc);
        acc = acc * root;
      }
      if (k + 1 < r_) root = frobenius(root, 1);
    }
    // sigma has exact order r
    if (!frobenius(sigma_pow_[r_ - 1][1], 1).equals(g))
      throw invariant_error("frobenius does not have order equal to the degree");
  } else {
    // degree-1 tower cannot occur (degree = 2fm >= 2)
    throw invariant_error("tower degree must be at least 2");
  }

  // subfield embedding for levels m > 1
  if (m_ > 1) {
    e_level_ = create(p_, f_, 1, N_);
    if (!residue_)
      throw std::invalid_argument("tower too large for subfield embedding tables");
    const auto& fe = e_level_->defining_poly();
    const Fq& k_t = *residue_;
    std::uint32_t root_res = 0;
    bool found = false;
    for (std::uint32_t cand = 0; cand < k_t.size() && !found; ++cand) {
      std::uint32_t acc = 0;
      for (int i = static_cast<int>(fe.size()) - 1; i >= 0; --i) {
        acc = k_t.mul(acc, cand);
        if (fe[i]) acc = k_t.add(acc, fe[i]);
      }
      if (acc == 0) {
        root_res = cand;
        found = true;
      }
    }
    if (!found) throw invariant_error("no residue root for subfield embedding");
    Elt y = lift_residue(root_res);
    auto fe_eval = [&](const Elt& x, bool derivative) {
      Elt acc = zero();
      int de = static_cast<int>(fe.size()) - 1;
      if (!derivative) {
        for (int i = de; i >= 0; --i) {
          acc = acc * x;
          if (fe[i]) acc = acc + from_int(static_cast<long>(fe[i]));
        }
      } else {
        for (int i = de; i >= 1; --i) {
          acc = acc * x;
          long c = static_cast<long>(i) * static_cast<long>(fe[i]);
          if (c) acc = acc + from_int(c);
        }
      }
      return acc;
    };
    int iters = 1;
    while ((1 << iters) < N_) ++iters;
    iters += 2;
    for (int it = 0; it < iters; ++it) y = y - fe_eval(y, false) * fe_eval(y, true).inverse();
    if (fe_eval(y, false).core_val() < fe_eval(y, false).prec_)
      throw invariant_error("subfield root lift did not converge");
    e_root_pow_.clear();
    Elt acc = one();
    for (int i = 0; i < 2 * f_; ++i) {
      e_root_pow_.push_back(acc);
      acc = acc * y;
    }
  }

  // deterministic trace-zero unit of the E level, embedded
  if (m_ == 1) {
    if (!residue_) throw std::invalid_argument("residue field required for skew unit");
    bool found = false;
    for (std::uint32_t cand = 1; cand < residue_->size() && !found; ++cand) {
      Elt w = lift_residue(cand);
      Elt t = w - frobenius(w, f_);
      if (t.valuation() == std::optional<int>(0)) {
        skew_unit_ = t;
        found = true;
      }
    }
    if (!found) throw invariant_error("no trace-zero unit found");
  } else {
    skew_unit_ = embed_from_e(e_level_->skew_unit());
  }
}

}  // namespace bts

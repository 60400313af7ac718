#include "btstrata/dl.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace bts {

FiniteHermitianSpace FiniteHermitianSpace::standard(std::uint32_t p, int f, int d, int cls) {
  FiniteHermitianSpace V;
  V.p = p;
  V.f = f;
  V.d = d;
  V.cls = cls;
  V.F2 = Fq::get(p, 2 * f);
  const Fq& F = *V.F2;
  std::uint32_t tbar = 0;
  for (std::uint32_t x = 1; x < F.size(); ++x)
    if (F.frob(x, f) == F.neg(x)) {
      tbar = x;
      break;
    }
  if (!tbar) throw invariant_error("no skew unit in the residue field");
  V.gram = FqMat(F, d, d);
  for (int i = 0; i < d; ++i) V.gram.at(i, i) = tbar;
  return V;
}

LevelContext level_context(const FiniteHermitianSpace& V, int m) {
  if (m < 1) throw std::invalid_argument("level must be positive");
  LevelContext ctx;
  ctx.K = Fq::get(V.p, 2 * V.f * m);
  ctx.m = m;
  ctx.conj_k = V.f;
  const int D = 2 * V.f * m;
  ctx.twist_k = (D - 2 * V.f) % D;
  ctx.gramK = FqMat(*ctx.K, V.d, V.d);
  for (int i = 0; i < V.d; ++i)
    for (int j = 0; j < V.d; ++j) ctx.gramK.at(i, j) = ctx.K->embed(*V.F2, V.gram.at(i, j));
  return ctx;
}

namespace {

using Vec = std::vector<std::uint32_t>;

// (x, y) = x^T G y^{(q)}
std::uint32_t form_eval(const LevelContext& ctx, const Vec& x, const Vec& y) {
  const Fq& K = *ctx.K;
  const int d = ctx.gramK.rows;
  std::uint32_t acc = 0;
  for (int i = 0; i < d; ++i) {
    if (!x[i]) continue;
    std::uint32_t row = 0;
    for (int j = 0; j < d; ++j) {
      if (!y[j]) continue;
      row = K.add(row, K.mul(ctx.gramK.at(i, j), K.frob(y[j], ctx.conj_k)));
    }
    acc = K.add(acc, K.mul(x[i], row));
  }
  return acc;
}

// G2(x, y) = (x^{(q^2)}, y)
std::uint32_t g2_eval(const LevelContext& ctx, const Vec& x, const Vec& y) {
  const Fq& K = *ctx.K;
  Vec xt(x.size());
  for (size_t i = 0; i < x.size(); ++i) xt[i] = K.frob(x[i], 2 * ctx.conj_k);
  return form_eval(ctx, xt, y);
}

Vec mat_row(const FqMat& m, int i) {
  return Vec(m.a.begin() + static_cast<size_t>(i) * m.cols,
             m.a.begin() + static_cast<size_t>(i + 1) * m.cols);
}

// reduce v against RREF rows in place; returns true if reduced to zero
bool reduce_against(const FqMat& rrefm, Vec& v) {
  const Fq& K = *rrefm.F;
  for (int i = 0; i < rrefm.rows; ++i) {
    int pc = -1;
    for (int j = 0; j < rrefm.cols; ++j)
      if (rrefm.at(i, j) != 0) {
        pc = j;
        break;
      }
    if (pc < 0) continue;
    std::uint32_t c = v[pc];
    if (!c) continue;
    for (int j = pc; j < rrefm.cols; ++j) v[j] = K.sub(v[j], K.mul(c, rrefm.at(i, j)));
  }
  for (auto x : v)
    if (x) return false;
  return true;
}

struct WalkSink {
  DlCounts counts;
  const std::function<void(const Flag&, bool)>* callback = nullptr;
  const FiniteHermitianSpace* V = nullptr;
  int h_eff = 0, m = 1;
  unsigned long long spot_interval = 0;  // verify every k-th flag against flag_membership
};

// enumeration of the closed stratum through its annihilator subspace W:
// a flag (S1, S2) is closed iff W := cv(S2) satisfies G2(W, W) = 0 and
// W + W^{(q^-2)} <= S1 <= S2 = cvinv(W).  The open refinement is
// S1 <= cv(S1), i.e. (S1, S1) = 0, except that h_eff = 0 forces open-id.
class ClosedFlagWalk {
 public:
  ClosedFlagWalk(const FiniteHermitianSpace& V, int h_eff, int m, const Budget& budget,
                 WalkSink& sink)
      : V_(V), ctx_(level_context(V, m)), h_(h_eff), budget_(budget), sink_(sink) {
    d_ = V.d;
    l_ = (d_ - 1 - h_) / 2;
  }

  bool valid_dims() const { return h_ >= 0 && d_ - 1 - h_ >= 0 && (d_ - 1 - h_) % 2 == 0; }

  void run_pattern(const std::vector<int>& pattern) {
    pattern_ = &pattern;
    rows_.clear();
    extend(0);
    flush_budget();
  }

  static std::vector<std::vector<int>> patterns(int d, int l) {
    std::vector<std::vector<int>> out;
    if (l == 0) {
      out.push_back({});
      return out;
    }
    std::vector<int> piv(l);
    for (int i = 0; i < l; ++i) piv[i] = i;
    while (true) {
      out.push_back(piv);
      int i = l - 1;
      while (i >= 0 && piv[i] == d - l + i) --i;
      if (i < 0) break;
      ++piv[i];
      for (int j = i + 1; j < l; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
  }

 private:
  void charge(unsigned long long units = 1) {
    local_charge_ += units;
    if (local_charge_ >= 4096) flush_budget();
  }
  void flush_budget() {
    if (local_charge_) {
      budget_.charge(local_charge_);
      local_charge_ = 0;
    }
  }

  void extend(int depth) {
    if (depth == l_) {
      leaf();
      return;
    }
    const Fq& K = *ctx_.K;
    const int pi = (*pattern_)[depth];
    // free columns: after the pivot, not a pattern pivot
    std::vector<int> free_cols;
    for (int c = pi + 1; c < d_; ++c) {
      bool is_piv = false;
      for (int t = depth + 1; t < l_; ++t)
        if ((*pattern_)[t] == c) is_piv = true;
      if (!is_piv) free_cols.push_back(c);
    }
    const int nf = static_cast<int>(free_cols.size());
    // linear constraints from G2-isotropy with earlier rows, evaluated on the
    // affine family v = e_{pi} + sum over free columns
    const int nc = 2 * depth;
    FqMat A(K, nc, nf + 1);  // last column = rhs
    for (int j = 0; j < depth; ++j) {
      // rows r1 = (w^{(q^2)T} G)^{(q^-1)} and r2 = (G w^{(q)})^{(q^-2)}
      Vec w = rows_[j];
      Vec r1(d_), r2(d_);
      {
        Vec wt(d_);
        for (int i = 0; i < d_; ++i) wt[i] = K.frob(w[i], 2 * ctx_.conj_k);
        for (int c = 0; c < d_; ++c) {
          std::uint32_t acc = 0;
          for (int i = 0; i < d_; ++i)
            if (wt[i]) acc = K.add(acc, K.mul(wt[i], ctx_.gramK.at(i, c)));
          // undo the pending conjugation of v: raise to q^{-1}
          r1[c] = K.frob(acc, (K.degree() - ctx_.conj_k) % K.degree());
        }
        // v^{(q^2)T} (G w^{(q)}) = 0  <=>  v . (G w^{(q)})^{(q^-2)} = 0
        Vec wq(d_);
        for (int i = 0; i < d_; ++i) wq[i] = K.frob(w[i], ctx_.conj_k);
        for (int i = 0; i < d_; ++i) {
          std::uint32_t acc = 0;
          for (int c = 0; c < d_; ++c)
            if (wq[c]) acc = K.add(acc, K.mul(ctx_.gramK.at(i, c), wq[c]));
          r2[i] = K.frob(acc, ctx_.twist_k);
        }
      }
      for (int t = 0; t < nf; ++t) {
        A.at(2 * j, t) = r1[free_cols[t]];
        A.at(2 * j + 1, t) = r2[free_cols[t]];
      }
      A.at(2 * j, nf) = K.neg(r1[pi]);
      A.at(2 * j + 1, nf) = K.neg(r2[pi]);
    }
    // solve A x = rhs on the free coordinates
    auto piv_cols = rref(A);
    Vec part(nf, 0);
    std::vector<int> pivot_of(nf, -1);
    for (size_t r = 0; r < piv_cols.size(); ++r) {
      if (piv_cols[r] == nf) return;  // inconsistent
      pivot_of[piv_cols[r]] = static_cast<int>(r);
      part[piv_cols[r]] = A.at(static_cast<int>(r), nf);
    }
    std::vector<int> free_params;
    for (int t = 0; t < nf; ++t)
      if (pivot_of[t] < 0) free_params.push_back(t);
    const int s = static_cast<int>(free_params.size());
    // null-space basis vectors on free coordinates
    std::vector<Vec> basis(s, Vec(nf, 0));
    for (int k2 = 0; k2 < s; ++k2) {
      basis[k2][free_params[k2]] = 1;
      for (int t = 0; t < nf; ++t)
        if (pivot_of[t] >= 0) basis[k2][t] = K.neg(A.at(pivot_of[t], free_params[k2]));
    }
    // lift to full vectors
    auto to_full = [&](const Vec& coords, bool with_pivot) {
      Vec v(d_, 0);
      if (with_pivot) v[pi] = 1;
      for (int t = 0; t < nf; ++t) v[free_cols[t]] = coords[t];
      return v;
    };
    Vec vpart = to_full(part, true);
    std::vector<Vec> vbasis(s);
    for (int k2 = 0; k2 < s; ++k2) vbasis[k2] = to_full(basis[k2], false);
    // quadric scalars
    std::uint32_t c00 = g2_eval(ctx_, vpart, vpart);
    Vec qa(s), qb(s);
    FqMat qc(K, std::max(s, 1), std::max(s, 1));
    for (int k2 = 0; k2 < s; ++k2) {
      qa[k2] = g2_eval(ctx_, vbasis[k2], vpart);
      qb[k2] = g2_eval(ctx_, vpart, vbasis[k2]);
      for (int j2 = 0; j2 < s; ++j2) qc.at(k2, j2) = g2_eval(ctx_, vbasis[k2], vbasis[j2]);
    }
    // sweep lambda in K^s
    Vec lam(s, 0);
    Vec lam_q(s, 0), lam_q2(s, 0);
    while (true) {
      charge();
      std::uint32_t val = c00;
      for (int k2 = 0; k2 < s; ++k2) {
        if (lam[k2]) {
          val = K.add(val, K.mul(lam_q2[k2], qa[k2]));
          val = K.add(val, K.mul(lam_q[k2], qb[k2]));
          for (int j2 = 0; j2 < s; ++j2)
            if (lam[j2]) val = K.add(val, K.mul(K.mul(lam_q2[k2], lam_q[j2]), qc.at(k2, j2)));
        }
      }
      if (val == 0) {
        Vec v = vpart;
        for (int k2 = 0; k2 < s; ++k2)
          if (lam[k2])
            for (int t = 0; t < d_; ++t) v[t] = K.add(v[t], K.mul(lam[k2], vbasis[k2][t]));
        rows_.push_back(std::move(v));
        extend(depth + 1);
        rows_.pop_back();
      }
      int pos = 0;
      while (pos < s) {
        std::uint32_t nv = lam[pos] + 1;
        if (nv < K.size()) {
          lam[pos] = nv;
          lam_q[pos] = K.frob(nv, ctx_.conj_k);
          lam_q2[pos] = K.frob(nv, 2 * ctx_.conj_k);
          break;
        }
        lam[pos] = 0;
        lam_q[pos] = 0;
        lam_q2[pos] = 0;
        ++pos;
      }
      if (pos == s) break;
    }
  }

  void leaf() {
    const Fq& K = *ctx_.K;
    FqMat W(K, l_, d_);
    for (int i = 0; i < l_; ++i)
      for (int j = 0; j < d_; ++j) W.at(i, j) = rows_[i][j];
    FqMat Wr = row_space(W);
    FqMat S2 = curlyvee_inv_mat(Wr);
    // W <= S2 by the twisted isotropy; verify
    if (!containment(S2, Wr)) throw invariant_error("closed-flag walk: W not inside cvinv(W)");
    // floor = W + W^{(q^-2)}
    FqMat floor = Wr;
    if (ctx_.twist_k != 0) {
      FqMat Wt = Wr.frob(ctx_.twist_k);
      floor = row_space_sum(Wr, Wt);
      if (floor.rows > l_ + 1) return;
      if (!containment(S2, floor)) return;
    }
    if (floor.rows == l_ + 1) {
      emit(floor, S2);
      return;
    }
    // complement basis of floor inside S2
    std::vector<Vec> comp;
    for (int i = 0; i < S2.rows; ++i) {
      Vec v = mat_row(S2, i);
      // reduce against floor, then against already-collected comp vectors
      FqMat tmp(K, static_cast<int>(comp.size()) + floor.rows, d_);
      int r = 0;
      for (int t = 0; t < floor.rows; ++t, ++r)
        for (int j = 0; j < d_; ++j) tmp.at(r, j) = floor.at(t, j);
      for (auto& cv : comp) {
        for (int j = 0; j < d_; ++j) tmp.at(r, j) = cv[j];
        ++r;
      }
      FqMat red = row_space(tmp);
      if (!row_space_contains(red, v.data())) comp.push_back(v);
    }
    const int cn = static_cast<int>(comp.size());
    if (cn != h_ + 1) throw invariant_error("closed-flag walk: bad quotient dimension");
    // plain-form scalars for the open refinement
    bool base_iso = true;
    for (int i = 0; i < floor.rows && base_iso; ++i)
      for (int j = 0; j < floor.rows && base_iso; ++j) {
        Vec a = mat_row(floor, i), b = mat_row(floor, j);
        if (form_eval(ctx_, a, b) != 0) base_iso = false;
      }
    FqMat cross(K, std::max(cn, 1), std::max(floor.rows, 1));
    FqMat quad(K, cn, cn);
    for (int t = 0; t < cn; ++t) {
      for (int i = 0; i < floor.rows; ++i) {
        Vec fr = mat_row(floor, i);
        cross.at(t, i) = form_eval(ctx_, comp[t], fr);
      }
      for (int s2 = 0; s2 < cn; ++s2) quad.at(t, s2) = form_eval(ctx_, comp[t], comp[s2]);
    }
    // canonical line sweep over the quotient
    Vec mu(cn, 0);
    for (int lead = 0; lead < cn; ++lead) {
      std::fill(mu.begin(), mu.end(), 0);
      mu[lead] = 1;
      const int nf = cn - lead - 1;
      std::uint64_t total = 1;
      for (int i = 0; i < nf; ++i) total *= K.size();
      for (std::uint64_t wv = 0; wv < total; ++wv) {
        std::uint64_t t = wv;
        for (int i = 0; i < nf; ++i) {
          mu[lead + 1 + i] = static_cast<std::uint32_t>(t % K.size());
          t /= K.size();
        }
        charge();
        bool iso = base_iso;
        if (iso && h_ > 0) {
          for (int i = 0; i < floor.rows && iso; ++i) {
            std::uint32_t acc = 0;
            for (int t2 = lead; t2 < cn; ++t2)
              if (mu[t2]) acc = K.add(acc, K.mul(mu[t2], cross.at(t2, i)));
            if (acc) iso = false;
          }
          if (iso) {
            std::uint32_t acc = 0;
            for (int t2 = lead; t2 < cn; ++t2) {
              if (!mu[t2]) continue;
              for (int s2 = lead; s2 < cn; ++s2) {
                if (!mu[s2]) continue;
                acc = K.add(acc, K.mul(K.mul(mu[t2], K.frob(mu[s2], ctx_.conj_k)),
                                       quad.at(t2, s2)));
              }
            }
            if (acc) iso = false;
          }
        }
        bool open_id = (h_ == 0) ? true : iso;
        record(floor, comp, mu, lead, S2, open_id);
      }
    }
  }

  void emit(const FqMat& s1, const FqMat& s2) {
    bool open_id;
    if (h_ == 0) {
      open_id = true;
    } else {
      open_id = true;
      for (int i = 0; i < s1.rows && open_id; ++i)
        for (int j = 0; j < s1.rows && open_id; ++j) {
          Vec a = mat_row(s1, i), b = mat_row(s1, j);
          if (form_eval(ctx_, a, b) != 0) open_id = false;
        }
    }
    tally(row_space(s1), s2, open_id);
  }

  void record(const FqMat& floor, const std::vector<Vec>& comp, const Vec& mu, int lead,
              const FqMat& S2, bool open_id) {
    ++sink_.counts.closed;
    if (open_id) ++sink_.counts.open_id;
    else ++sink_.counts.open_w;
    const bool need_flag =
        sink_.callback ||
        (sink_.spot_interval && sink_.counts.closed % sink_.spot_interval == 0);
    if (!need_flag) return;
    const Fq& K = *ctx_.K;
    const int cn = static_cast<int>(comp.size());
    Vec v(d_, 0);
    for (int t = lead; t < cn; ++t)
      if (mu[t])
        for (int j = 0; j < d_; ++j) v[j] = K.add(v[j], K.mul(mu[t], comp[t][j]));
    FqMat s1(K, floor.rows + 1, d_);
    for (int i = 0; i < floor.rows; ++i)
      for (int j = 0; j < d_; ++j) s1.at(i, j) = floor.at(i, j);
    for (int j = 0; j < d_; ++j) s1.at(floor.rows, j) = v[j];
    deliver(row_space(s1), S2, open_id);
  }

  void tally(const FqMat& s1, const FqMat& s2, bool open_id) {
    ++sink_.counts.closed;
    if (open_id) ++sink_.counts.open_id;
    else ++sink_.counts.open_w;
    const bool need_flag =
        sink_.callback ||
        (sink_.spot_interval && sink_.counts.closed % sink_.spot_interval == 0);
    if (need_flag) deliver(s1, s2, open_id);
  }

  void deliver(const FqMat& s1, const FqMat& s2, bool open_id) {
    Flag fl{s1, row_space(s2)};
    if (sink_.spot_interval) {
      FlagVerdict v = flag_membership(fl, *sink_.V, sink_.h_eff, sink_.m);
      if (!v.closed || v.open_id != open_id)
        throw invariant_error("closed-flag walk disagrees with direct membership");
    }
    if (sink_.callback) (*sink_.callback)(fl, open_id);
  }

  FqMat curlyvee_inv_mat(const FqMat& U) {
    FqMat cv = cv_mat(U);
    if (ctx_.twist_k == 0) return cv;
    return row_space(cv.frob(ctx_.twist_k));
  }

  FqMat cv_mat(const FqMat& U) {
    FqMat C = U.frob(ctx_.conj_k).times(ctx_.gramK.transposed());
    return null_space(C);
  }

  bool containment(const FqMat& outer, const FqMat& inner) {
    for (int i = 0; i < inner.rows; ++i) {
      Vec v = mat_row(inner, i);
      if (!row_space_contains(outer, v.data())) return false;
    }
    return true;
  }

  const FiniteHermitianSpace& V_;
  LevelContext ctx_;
  int h_, d_, l_;
  const Budget& budget_;
  WalkSink& sink_;
  const std::vector<int>* pattern_ = nullptr;
  std::vector<Vec> rows_;
  unsigned long long local_charge_ = 0;
};

}  // namespace

FqMat curlyvee(const FqMat& U, const LevelContext& ctx) {
  FqMat C = U.frob(ctx.conj_k).times(ctx.gramK.transposed());
  return null_space(C);
}

FqMat curlyvee_inv(const FqMat& U, const LevelContext& ctx) {
  FqMat cv = curlyvee(U, ctx);
  if (ctx.twist_k == 0) return cv;
  return row_space(cv.frob(ctx.twist_k));
}

FlagVerdict flag_membership(const Flag& fl, const FiniteHermitianSpace& V, int h_eff, int m) {
  LevelContext ctx = level_context(V, m);
  const int d = V.d;
  if ((d - 1 - h_eff) % 2 != 0 || d - 1 - h_eff < 0)
    throw std::invalid_argument("flag_membership: invalid (t, h) parity");
  const int l = (d - 1 - h_eff) / 2;
  FqMat s1 = row_space(fl.s1), s2 = row_space(fl.s2);
  if (s1.cols != d || s2.cols != d || s1.rows != l + 1 || s2.rows != l + 1 + h_eff)
    throw std::invalid_argument("flag_membership: dimension mismatch");
  if (!row_space_contains_all(s2, s1))
    throw std::invalid_argument("flag_membership: subspaces not nested");
  FlagVerdict out;
  FqMat cv2 = curlyvee(s2, ctx);
  if (!row_space_contains_all(s1, cv2)) return out;
  FqMat cv1 = curlyvee(s1, ctx);
  if (!row_space_contains_all(s2, cv1)) return out;
  out.closed = true;
  out.open_id = (h_eff == 0) ? true : row_space_contains_all(cv1, s1);
  return out;
}

namespace {

DlCounts run_walk(const FiniteHermitianSpace& V, int h_eff, int m, const Budget& budget,
                  int jobs, const std::function<void(const Flag&, bool)>* callback,
                  unsigned long long spot_interval) {
  DlCounts zero;
  if (h_eff < 0 || V.d - 1 - h_eff < 0 || (V.d - 1 - h_eff) % 2 != 0) return zero;
  const int l = (V.d - 1 - h_eff) / 2;
  // fast-fail bound before any work: the annihilator sweep is capped by the
  // subspace count, the per-leaf sweep by the line count of the quotient
  {
    FqPtr K = Fq::get(V.p, 2 * V.f * m);
    unsigned long long gb = gaussian_binomial_u64(V.d, l, K->size());
    unsigned long long lines = 1;
    for (int i = 0; i < h_eff + 1; ++i) {
      if (lines > (1ull << 62) / K->size()) throw budget_error("count bound overflow");
      lines *= K->size();
    }
    lines = (lines - 1) / (K->size() - 1);
    if (gb > budget.limit() || lines > budget.limit())
      throw budget_error("flag enumeration beyond budget (bound " + std::to_string(gb) +
                         " annihilators, " + std::to_string(lines) + " lines per leaf)");
  }
  auto patterns = ClosedFlagWalk::patterns(V.d, l);
  if (callback || jobs <= 1 || patterns.size() <= 1) {
    WalkSink sink;
    sink.callback = callback;
    sink.V = &V;
    sink.h_eff = h_eff;
    sink.m = m;
    sink.spot_interval = spot_interval;
    ClosedFlagWalk walk(V, h_eff, m, budget, sink);
    for (const auto& pat : patterns) walk.run_pattern(pat);
    return sink.counts;
  }
  // parallel over pivot patterns; deterministic fold in pattern order
  std::vector<std::future<DlCounts>> futs;
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    WalkSink sink;
    sink.V = &V;
    sink.h_eff = h_eff;
    sink.m = m;
    sink.spot_interval = spot_interval;
    ClosedFlagWalk walk(V, h_eff, m, budget, sink);
    while (true) {
      size_t idx = next.fetch_add(1);
      if (idx >= patterns.size()) break;
      walk.run_pattern(patterns[idx]);
    }
    return sink.counts;
  };
  for (int t = 0; t < jobs; ++t) futs.push_back(std::async(std::launch::async, worker));
  DlCounts total;
  for (auto& f : futs) {
    DlCounts c = f.get();
    total.closed += c.closed;
    total.open_id += c.open_id;
    total.open_w += c.open_w;
  }
  return total;
}

}  // namespace

DlCounts count_points(const FiniteHermitianSpace& V, int h_eff, int m, const Budget& budget,
                      int jobs) {
  return run_walk(V, h_eff, m, budget, jobs, nullptr, 1024);
}

void for_each_closed_flag(const FiniteHermitianSpace& V, int h_eff, int m, const Budget& budget,
                          const std::function<void(const Flag&, bool)>& fn) {
  run_walk(V, h_eff, m, budget, 1, &fn, 0);
}

unsigned long long gaussian_binomial_u64(int n, int k, unsigned long long q) {
  if (k < 0 || k > n) return 0;
  double bits = 0;
  for (unsigned long long t = q; t > 1; t >>= 1) bits += 1;
  if (bits * (k * (n - k) + n) > 110) throw budget_error("gaussian binomial operand too large");
  unsigned __int128 num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    unsigned __int128 qn = 1, qd = 1;
    for (int t = 0; t < n - i; ++t) qn *= q;
    for (int t = 0; t < i + 1; ++t) qd *= q;
    num *= (qn - 1);
    den *= (qd - 1);
    // prefix products of the factor list are integers; renormalize each step
    num /= den;
    den = 1;
  }
  if (num > ~0ull) throw budget_error("gaussian binomial exceeds 64 bits");
  return static_cast<unsigned long long>(num);
}

}  // namespace bts

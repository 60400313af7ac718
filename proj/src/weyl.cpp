#include "btstrata/weyl.hpp"

#include <algorithm>
#include <stdexcept>

namespace bts {

Perm Perm::identity(int d) {
  Perm p;
  p.img.resize(d);
  for (int i = 0; i < d; ++i) p.img[i] = i + 1;
  return p;
}

Perm Perm::transposition(int d, int a, int b) {
  Perm p = identity(d);
  std::swap(p.img[a - 1], p.img[b - 1]);
  return p;
}

Perm Perm::times(const Perm& o) const {
  Perm r;
  r.img.resize(img.size());
  for (size_t i = 0; i < img.size(); ++i) r.img[i] = img[o.img[i] - 1];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img.resize(img.size());
  for (size_t i = 0; i < img.size(); ++i) r.img[img[i] - 1] = static_cast<int>(i) + 1;
  return r;
}

int Perm::length() const {
  int inv = 0;
  for (size_t i = 0; i < img.size(); ++i)
    for (size_t j = i + 1; j < img.size(); ++j)
      if (img[i] > img[j]) ++inv;
  return inv;
}

std::vector<int> twist_subset(int d, const std::vector<int>& I) {
  std::vector<int> out;
  out.reserve(I.size());
  for (int i : I) out.push_back(d - i);
  std::sort(out.begin(), out.end());
  return out;
}

int parabolic_length(int d, const std::vector<int>& J) {
  (void)d;
  int total = 0;
  size_t i = 0;
  while (i < J.size()) {
    size_t j = i;
    while (j + 1 < J.size() && J[j + 1] == J[j] + 1) ++j;
    int b = static_cast<int>(j - i + 1);  // block of b consecutive reflections
    total += b * (b + 1) / 2;
    i = j + 1;
  }
  return total;
}

Perm min_double_coset_rep(const WeylDatum& datum) {
  Perm w = datum.w;
  auto FI = twist_subset(datum.d, datum.I);
  bool changed = true;
  while (changed) {
    changed = false;
    Perm winv = w.inverse();
    for (int i : datum.I)
      if (winv(i) > winv(i + 1)) {  // left descent: shrink
        Perm s = Perm::transposition(datum.d, i, i + 1);
        w = s.times(w);
        changed = true;
        break;
      }
    if (changed) continue;
    for (int j : FI)
      if (w(j) > w(j + 1)) {  // right descent: shrink
        Perm s = Perm::transposition(datum.d, j, j + 1);
        w = w.times(s);
        changed = true;
        break;
      }
  }
  return w;
}

int dimension_weyl(const WeylDatum& datum) {
  const int d = datum.d;
  Perm w = min_double_coset_rep(datum);
  auto FI = twist_subset(d, datum.I);
  // I cap w F(I) w^{-1}, as a set of simple reflections
  std::vector<int> conj;
  for (int j : FI) {
    int a = w(j), b = w(j + 1);
    if (a > b) std::swap(a, b);
    if (b == a + 1) conj.push_back(a);  // w s_j w^{-1} = s_a
  }
  std::sort(conj.begin(), conj.end());
  std::vector<int> meet;
  std::set_intersection(datum.I.begin(), datum.I.end(), conj.begin(), conj.end(),
                        std::back_inserter(meet));
  return w.length() + parabolic_length(d, FI) - parabolic_length(d, meet);
}

namespace {

// w lies in the parabolic W_J iff it permutes each consecutive J-block
// interval into itself and fixes everything else
bool in_parabolic(const Perm& w, int d, const std::vector<int>& J) {
  std::vector<int> block(d + 1);
  int b = 0;
  std::vector<bool> inJ(d, false);
  for (int j : J) inJ[j] = true;
  for (int x = 1; x <= d; ++x) {
    block[x] = b;
    if (x < d && !inJ[x]) ++b;  // s_x not in J: positions x, x+1 disconnected
  }
  for (int x = 1; x <= d; ++x)
    if (block[w(x)] != block[x]) return false;
  return true;
}

}  // namespace

bool is_irreducible(const WeylDatum& datum) {
  const int d = datum.d;
  if (d > 16) throw budget_error("is_irreducible: d beyond the exhaustive-search budget");
  Perm w = min_double_coset_rep(datum);
  // orbits of i <-> d-i on {1..d-1}
  std::vector<std::pair<int, int>> orbits;
  for (int i = 1; i <= d - i; ++i)
    if (i <= d - 1) orbits.emplace_back(i, d - i);
  const int no = static_cast<int>(orbits.size());
  for (std::uint32_t mask = 0; mask + 1 < (1u << no); ++mask) {
    // proper F-stable subsets: skip mask == all-ones (J = S)
    std::vector<int> J;
    for (int t = 0; t < no; ++t)
      if (mask & (1u << t)) {
        J.push_back(orbits[t].first);
        if (orbits[t].second != orbits[t].first) J.push_back(orbits[t].second);
      }
    std::sort(J.begin(), J.end());
    // need I subset of J and w in W_J
    if (!std::includes(J.begin(), J.end(), datum.I.begin(), datum.I.end())) continue;
    if (in_parabolic(w, d, J)) return false;
  }
  return true;
}

StratumDatum stratum_weyl_datum(int t, int h_eff) {
  if (t < 1 || h_eff < 0) throw std::invalid_argument("stratum datum: bad (t, h)");
  if ((t - 1 - h_eff) % 2 != 0 || t - 1 - h_eff < 0)
    throw std::invalid_argument("stratum datum: parity requires t = 2l + h + 1");
  const int l = (t - 1 - h_eff) / 2;
  StratumDatum out;
  out.l = l;
  out.datum.d = t;
  for (int i = 1; i <= t - 1; ++i)
    if (i != l + 1 && i != l + h_eff + 1) out.datum.I.push_back(i);
  Perm w = Perm::identity(t);
  for (int i = l + 1; i <= l + h_eff; ++i) w = w.times(Perm::transposition(t, i, i + 1));
  out.datum.w = w;
  out.w_transposition = (h_eff == 0) ? Perm::identity(t)
                                     : Perm::transposition(t, l + 1, l + h_eff + 1);
  return out;
}

}  // namespace bts

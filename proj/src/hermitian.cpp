#include "btstrata/hermitian.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace bts {

HermitianSpace HermitianSpace::standard(FieldPtr F, int n, FormKind kind) {
  if (kind == FormKind::Custom) throw std::invalid_argument("standard: TI or TJ only");
  PMat g(F, n, n);
  Elt t = F->skew_unit();
  for (int i = 0; i < n; ++i) g.at(i, i) = t;
  if (kind == FormKind::TJ) g.at(0, 0) = t * F->pi();
  return HermitianSpace(std::move(g), kind);
}

HermitianSpace HermitianSpace::standard_for(FieldPtr F, int n, int h) {
  if (h < 0 || h > n) throw std::invalid_argument("standard_for: need 0 <= h <= n");
  bool even = ((n - h - 1) % 2 + 2) % 2 == 0;
  return standard(std::move(F), n, even ? FormKind::TI : FormKind::TJ);
}

HermitianSpace HermitianSpace::custom(FieldPtr F, PMat gram) {
  if (gram.rows != gram.cols) throw std::invalid_argument("custom: gram must be square");
  const TowerField& T = *F;
  for (int i = 0; i < gram.rows; ++i)
    for (int j = 0; j < gram.cols; ++j)
      if (!(T.conj(gram.at(i, j)) + gram.at(j, i)).is_zero())
        throw std::invalid_argument("custom: gram matrix is not skew-hermitian");
  return HermitianSpace(std::move(gram), FormKind::Custom);
}

Elt HermitianSpace::form(std::span<const Elt> x, std::span<const Elt> y) const {
  const TowerField& T = *field();
  Elt acc = T.zero();
  for (int i = 0; i < dim(); ++i) {
    if (!x[i].valuation() && x[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) acc = acc + x[i] * gram_.at(i, j) * T.conj(y[j]);
  }
  return acc;
}

Lattice HermitianSpace::dual(const Lattice& L) const {
  // { x : {x, L} integral } has basis (conj(M)^T G^T)^{-1}
  const TowerField& T = *field();
  PMat mc = L.basis().map_entries([&](const Elt& e) { return T.conj(e); });
  PMat prod = mc.transposed().times(gram_.transposed());
  return Lattice::from_generators(inverse(prod));
}

HermitianSpace HermitianSpace::embedded(const FieldPtr& bigger) const {
  if (bigger.get() == field().get()) return *this;
  if (bigger->e_level().get() != field().get())
    throw std::invalid_argument("embedded: target is not a level of this tower");
  PMat g(bigger, dim(), dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) g.at(i, j) = bigger->embed_from_e(gram_.at(i, j));
  return HermitianSpace(std::move(g), kind_);
}

// ---------------------------------------------------------------------------

VertexInfo classify_vertex(const Lattice& L, const HermitianSpace& space, int n, int h) {
  VertexInfo info;
  if (!L.is_tau_invariant()) return info;
  Lattice D = space.dual(L);
  for (int i = 0; i < 2; ++i) {
    Lattice lower = D.scaled(i + 1);
    Lattice upper = D.scaled(i);
    if (!L.contains_lattice(lower)) continue;
    if (!upper.contains_lattice(L)) continue;
    info.is_vertex[i] = true;
    info.type[i] = lower.index_in(L);
    int threshold = (i == 0) ? h : n - h;
    if (info.type[i] >= threshold + 1) info.sign[i] = Sign::Plus;
    else if (info.type[i] <= threshold - 1) info.sign[i] = Sign::Minus;
    else info.sign[i] = Sign::Neither;
  }
  return info;
}

std::vector<Lattice> enumerate_lattices_between(const Lattice& bottom, const Lattice& top,
                                                const Budget& budget) {
  const FieldPtr& F = top.field();
  const int n = top.dim();
  if (!top.contains_lattice(bottom))
    throw std::invalid_argument("enumerate: bottom not contained in top");
  const Fq& k = F->residue_field();
  const std::uint32_t Q = k.size();

  std::vector<Lattice> out;
  std::unordered_set<std::string> seen;
  std::deque<Lattice> queue;
  queue.push_back(top);
  seen.insert(top.canonical_key());

  while (!queue.empty()) {
    budget.charge();
    Lattice L = queue.front();
    queue.pop_front();
    out.push_back(L);
    if (L == bottom) continue;
    // children are kernels of surjections L -> L/piL -> kappa: preimages of
    // hyperplanes ker(c . ) for covectors c normalized to leading entry 1
    const PMat& B = L.basis();
    std::vector<std::uint32_t> c(n, 0);
    for (int lead = 0; lead < n; ++lead) {
      std::fill(c.begin(), c.end(), 0);
      c[lead] = 1;
      int free = n - lead - 1;
      std::uint64_t count = 1;
      for (int i = 0; i < free; ++i) count *= Q;
      for (std::uint64_t w = 0; w < count; ++w) {
        std::uint64_t t = w;
        for (int i = 0; i < free; ++i) {
          c[lead + 1 + i] = static_cast<std::uint32_t>(t % Q);
          t /= Q;
        }
        budget.charge();
        // basis of the kernel: pi*b_lead and b_j - c_j * b_lead (j != lead)
        PMat g(F, n, n);
        for (int i = 0; i < n; ++i) g.at(i, lead) = B.at(i, lead).times_pi(1);
        for (int j = 0; j < n; ++j) {
          if (j == lead) continue;
          if (c[j] == 0) {
            for (int i = 0; i < n; ++i) g.at(i, j) = B.at(i, j);
            continue;
          }
          Elt corr = F->lift_residue(k.neg(c[j]));
          for (int i = 0; i < n; ++i) g.at(i, j) = B.at(i, j) + corr * B.at(i, lead);
        }
        Lattice child = Lattice::from_generators(g);
        if (!child.contains_lattice(bottom)) continue;
        if (seen.insert(child.canonical_key()).second) queue.push_back(child);
      }
    }
  }
  return out;
}

std::vector<Lattice> enumerate_lattices_in_window(const FieldPtr& F, int n, int window,
                                                  const Budget& budget) {
  if (window < 0) throw std::invalid_argument("window must be nonnegative");
  return enumerate_lattices_between(Lattice::standard(F, n).scaled(window),
                                    Lattice::standard(F, n).scaled(-window), budget);
}

std::vector<VertexLattice> enumerate_vertex_lattices(const HermitianSpace& space, int n, int h,
                                                     int window, const Budget& budget) {
  auto all = enumerate_lattices_in_window(space.field(), n, window, budget);
  std::vector<VertexLattice> out;
  for (const auto& L : all) {
    VertexInfo info = classify_vertex(L, space, n, h);
    for (int i = 0; i < 2; ++i)
      if (info.is_vertex[i]) out.push_back({L, i, info.type[i], info.sign[i]});
  }
  std::sort(out.begin(), out.end(), [](const VertexLattice& a, const VertexLattice& b) {
    auto ka = a.lat.canonical_key(), kb = b.lat.canonical_key();
    if (ka != kb) return ka < kb;
    return a.cls < b.cls;
  });
  return out;
}

nlohmann::json VertexLattice::to_json() const {
  return {{"lattice", lat.to_json()},
          {"class", cls},
          {"type", type},
          {"sign", sign_name(sign)},
          {"key", lat.canonical_key()}};
}

}  // namespace bts

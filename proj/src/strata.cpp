#include "btstrata/strata.hpp"

namespace bts {

StratumContext StratumContext::make(std::uint32_t p, int f, int n, int h, int m, int precision,
                                    FormKind kind) {
  if (h < 0 || h > n) throw std::invalid_argument("need 0 <= h <= n");
  StratumContext ctx;
  ctx.E = TowerField::create(p, f, 1, precision);
  ctx.T = TowerField::create(p, f, m, precision);
  ctx.space_e = (kind == FormKind::Custom) ? HermitianSpace::standard_for(ctx.E, n, h)
                                           : HermitianSpace::standard(ctx.E, n, kind);
  ctx.space_t = ctx.space_e.embedded(ctx.T);
  ctx.n = n;
  ctx.h = h;
  ctx.m = m;
  return ctx;
}

namespace {

bool contained_with_index(const Lattice& small, const Lattice& big, int want, std::string& why,
                          const char* label) {
  if (!big.contains_lattice(small)) {
    why = std::string(label) + ": not contained";
    return false;
  }
  int idx = small.index_in(big);
  if (idx != want) {
    why = std::string(label) + ": index " + std::to_string(idx) + " != " + std::to_string(want);
    return false;
  }
  return true;
}

}  // namespace

PointCheck is_point(const StratumContext& ctx, const StratumPoint& pt) {
  PointCheck out;
  const int n = ctx.n, h = ctx.h;
  std::string why;
  if (!contained_with_index(pt.A, pt.B, h, why, "A in B with index h")) {
    out.ok = false;
    out.violation = why;
    return out;
  }
  if (!pt.A.contains_lattice(pt.B.scaled(1))) {
    out.ok = false;
    out.violation = "pi*B in A";
    return out;
  }
  Lattice dualB = ctx.space_t.dual(pt.B);
  if (!contained_with_index(dualB.scaled(1), pt.A, 1, why, "pi*B-dual in A with index 1") ||
      !contained_with_index(pt.A, dualB, n - 1, why, "A in B-dual with index n-1")) {
    out.ok = false;
    out.violation = why;
    return out;
  }
  Lattice dualA = ctx.space_t.dual(pt.A);
  if (!contained_with_index(dualA.scaled(1), pt.B, 1, why, "pi*A-dual in B with index 1") ||
      !contained_with_index(pt.B, dualA, n - 1, why, "B in A-dual with index n-1")) {
    out.ok = false;
    out.violation = why;
    return out;
  }
  return out;
}

std::pair<Lattice, int> tau_closure(const Lattice& L, int bound) {
  Lattice cur = L;
  int depth = 0;
  while (true) {
    Lattice next = cur.sum(cur.tau_image());
    if (next == cur) return {cur, depth};
    cur = next;
    ++depth;
    if (depth > bound)
      throw invariant_error("tau closure did not stabilize within the level bound");
  }
}

std::vector<ClassifierVerdict> classify(const StratumContext& ctx, const StratumPoint& pt) {
  const int bound = ctx.m * ctx.n;
  auto [lamA, c] = tau_closure(pt.A, bound);
  auto [lamB, d] = tau_closure(pt.B, bound);
  std::vector<ClassifierVerdict> out;

  // case with a class-0 witness: B <= Lambda_B <= Lambda_B-dual and
  // pi*Lambda_B-dual <= pi*B-dual
  {
    Lattice dual = ctx.space_t.dual(lamB);
    Lattice dualB = ctx.space_t.dual(pt.B);
    bool ok = lamB.contains_lattice(dual.scaled(1)) && dual.contains_lattice(lamB) &&
              lamB.contains_lattice(pt.B) &&
              dualB.scaled(1).contains_lattice(dual.scaled(1));
    if (ok) {
      ClassifierVerdict v;
      v.cls = 0;
      v.witness = lamB;
      v.type = dual.scaled(1).index_in(lamB);
      v.sign = v.type >= ctx.h + 1 ? Sign::Plus
                                   : (v.type <= ctx.h - 1 ? Sign::Minus : Sign::Neither);
      v.depth_c = c;
      v.depth_d = d;
      out.push_back(std::move(v));
    }
  }
  // case with a class-1 witness: A <= Lambda_A <= pi*Lambda_A-dual and
  // pi^2*Lambda_A-dual <= pi^2*A-dual
  {
    Lattice dual = ctx.space_t.dual(lamA);
    Lattice dualA = ctx.space_t.dual(pt.A);
    bool ok = lamA.contains_lattice(dual.scaled(2)) && dual.scaled(1).contains_lattice(lamA) &&
              lamA.contains_lattice(pt.A) &&
              dualA.scaled(2).contains_lattice(dual.scaled(2));
    if (ok) {
      ClassifierVerdict v;
      v.cls = 1;
      v.witness = lamA;
      v.type = dual.scaled(2).index_in(lamA);
      v.sign = v.type >= ctx.n - ctx.h + 1
                   ? Sign::Plus
                   : (v.type <= ctx.n - ctx.h - 1 ? Sign::Minus : Sign::Neither);
      v.depth_c = c;
      v.depth_d = d;
      out.push_back(std::move(v));
    }
  }
  if (out.empty())
    throw invariant_error("classifier: neither case diagram holds for a valid point");
  return out;
}

bool s_membership(const StratumContext& ctx, const VertexLattice& lambda0,
                  const StratumPoint& pt) {
  if (lambda0.cls != 0 || lambda0.sign != Sign::Plus)
    throw std::invalid_argument("s_membership: class-0 sign-+ vertex lattice required");
  PMat emb = lambda0.lat.basis().map_entries(
      [&](const Elt& e) { return ctx.T->embed_from_e(e); });
  Lattice lam = Lattice::from_generators(emb);
  Lattice lam_dual = ctx.space_t.dual(lam);
  Lattice dualA = ctx.space_t.dual(pt.A);
  Lattice dualB = ctx.space_t.dual(pt.B);
  // (i)  pi A-dual c1 B c Lambda c Lambda-dual ; pi Lambda-dual c pi B-dual c1 A
  if (!pt.B.contains_lattice(dualA.scaled(1))) return false;
  if (dualA.scaled(1).index_in(pt.B) != 1) return false;
  if (!lam.contains_lattice(pt.B)) return false;
  if (!lam_dual.contains_lattice(lam)) return false;
  if (!dualB.scaled(1).contains_lattice(lam_dual.scaled(1))) return false;
  if (!pt.A.contains_lattice(dualB.scaled(1))) return false;
  if (dualB.scaled(1).index_in(pt.A) != 1) return false;
  // (ii) pi B c^{n-h} A c^h B
  if (!pt.A.contains_lattice(pt.B.scaled(1))) return false;
  if (pt.B.scaled(1).index_in(pt.A) != ctx.n - ctx.h) return false;
  if (pt.A.index_in(pt.B) != ctx.h) return false;
  return true;
}

bool r_membership(const StratumContext& ctx, const VertexLattice& lambda1,
                  const StratumPoint& pt) {
  if (lambda1.cls != 1 || lambda1.sign != Sign::Plus)
    throw std::invalid_argument("r_membership: class-1 sign-+ vertex lattice required");
  PMat emb = lambda1.lat.basis().map_entries(
      [&](const Elt& e) { return ctx.T->embed_from_e(e); });
  Lattice lam = Lattice::from_generators(emb);
  Lattice lam_dual = ctx.space_t.dual(lam);
  Lattice dualA = ctx.space_t.dual(pt.A);
  Lattice dualB = ctx.space_t.dual(pt.B);
  // (i)  pi B-dual c1 A c Lambda c pi Lambda-dual ; pi^2 Lambda-dual c pi^2 A-dual c1 pi B
  if (!pt.A.contains_lattice(dualB.scaled(1))) return false;
  if (dualB.scaled(1).index_in(pt.A) != 1) return false;
  if (!lam.contains_lattice(pt.A)) return false;
  if (!lam_dual.scaled(1).contains_lattice(lam)) return false;
  if (!dualA.scaled(2).contains_lattice(lam_dual.scaled(2))) return false;
  if (!pt.B.scaled(1).contains_lattice(dualA.scaled(2))) return false;
  if (dualA.scaled(2).index_in(pt.B.scaled(1)) != 1) return false;
  // (ii)
  if (!pt.A.contains_lattice(pt.B.scaled(1))) return false;
  if (pt.B.scaled(1).index_in(pt.A) != ctx.n - ctx.h) return false;
  if (pt.A.index_in(pt.B) != ctx.h) return false;
  return true;
}

bool cycle_membership(const StratumContext& ctx, const StratumPoint& pt,
                      std::span<const Elt> v, CycleKind kind) {
  const Lattice& L = (kind == CycleKind::Z) ? pt.B : pt.A;
  return ctx.space_t.dual(L).scaled(1).contains(v);
}

VertexChart make_chart(const StratumContext& ctx, const VertexLattice& vertex) {
  VertexChart chart;
  chart.vertex = vertex;
  const int i = vertex.cls;
  // adapted basis over the E level, where the quotient carries its
  // F_{q^2}-structure
  Lattice lam_e = vertex.lat;
  Lattice lam_minus_e = ctx.space_e.dual(lam_e).scaled(i + 1);
  auto [U, exps] = adapted_basis(lam_e, lam_minus_e);
  for (size_t j = 0; j < exps.size(); ++j) {
    if (exps[j] == 1) chart.vcols.push_back(static_cast<int>(j));
    else if (exps[j] != 0)
      throw invariant_error("vertex chart: inclusion is not pi-elementary");
  }
  if (static_cast<int>(chart.vcols.size()) != vertex.type)
    throw invariant_error("vertex chart: quotient dimension differs from the type");
  // induced form on the quotient: reduction of pi^{-i} {u_a, u_b}
  const int t = vertex.type;
  const Fq& k_e = ctx.E->residue_field();
  FiniteHermitianSpace V;
  V.F2 = ctx.E->residue_field_ptr();
  V.p = ctx.E->p();
  V.f = ctx.E->f();
  V.d = t;
  V.cls = i;
  V.gram = FqMat(k_e, t, t);
  std::vector<std::vector<Elt>> cols(t);
  for (int a = 0; a < t; ++a) {
    cols[a].reserve(ctx.n);
    for (int r = 0; r < ctx.n; ++r) cols[a].push_back(U.at(r, chart.vcols[a]));
  }
  for (int a = 0; a < t; ++a)
    for (int b = 0; b < t; ++b) {
      Elt val = ctx.space_e.form(cols[a], cols[b]).times_pi(-i);
      V.gram.at(a, b) = val.to_residue();
    }
  {
    FqMat g = V.gram;
    if (static_cast<int>(rref(g).size()) != t)
      throw invariant_error("vertex chart: induced form is degenerate");
  }
  chart.V = std::move(V);
  // embed the chart into the level-m field
  auto embed_mat = [&](const PMat& mat) {
    return mat.map_entries([&](const Elt& e) { return ctx.T->embed_from_e(e); });
  };
  chart.lambda_t = Lattice::from_generators(embed_mat(lam_e.basis()));
  chart.lambda_minus_t = Lattice::from_generators(embed_mat(lam_minus_e.basis()));
  chart.adapted_t = embed_mat(U);
  return chart;
}

namespace {

// lattice generated by lambda_minus and lifts of the flag rows through the
// adapted basis
Lattice lift_span(const StratumContext& ctx, const VertexChart& chart, const FqMat& rows) {
  const int n = ctx.n;
  const int t = chart.V.d;
  const Fq& K = *rows.F;
  const Fq& kT = ctx.T->residue_field();
  if (&K != &kT) throw std::invalid_argument("flag is not over the level-m residue field");
  PMat gens(ctx.T, n, n + rows.rows);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gens.at(i, j) = chart.lambda_minus_t.basis().at(i, j);
  for (int r = 0; r < rows.rows; ++r) {
    for (int a = 0; a < t; ++a) {
      std::uint32_t c = rows.at(r, a);
      if (!c) continue;
      Elt lift = ctx.T->lift_residue(c);
      for (int i = 0; i < n; ++i)
        gens.at(i, n + r) = gens.at(i, n + r) + lift * chart.adapted_t.at(i, chart.vcols[a]);
    }
  }
  return Lattice::from_generators(gens);
}

// image of a sublattice between lambda_minus and lambda in the quotient
FqMat reduce_span(const StratumContext& ctx, const VertexChart& chart, const Lattice& L) {
  const int n = ctx.n;
  const int t = chart.V.d;
  const Fq& K = ctx.T->residue_field();
  PMat coords = inverse(chart.adapted_t).times(L.basis());
  FqMat rows(K, n, t);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < t; ++a) rows.at(j, a) = coords.at(chart.vcols[a], j).to_residue();
  return row_space(rows);
}

}  // namespace

StratumPoint lift_flag(const StratumContext& ctx, const VertexChart& chart, const Flag& fl) {
  StratumPoint pt;
  if (chart.vertex.cls == 0) {
    pt.A = lift_span(ctx, chart, fl.s1);
    pt.B = lift_span(ctx, chart, fl.s2);
  } else {
    pt.B = lift_span(ctx, chart, fl.s1).scaled(-1);
    pt.A = lift_span(ctx, chart, fl.s2);
  }
  PointCheck chk = is_point(ctx, pt);
  if (!chk.ok) throw std::invalid_argument("lift_flag: invalid flag (" + chk.violation + ")");
  return pt;
}

Flag reduce_point(const StratumContext& ctx, const VertexChart& chart, const StratumPoint& pt) {
  Flag fl;
  if (chart.vertex.cls == 0) {
    fl.s1 = reduce_span(ctx, chart, pt.A);
    fl.s2 = reduce_span(ctx, chart, pt.B);
  } else {
    fl.s1 = reduce_span(ctx, chart, pt.B.scaled(1));
    fl.s2 = reduce_span(ctx, chart, pt.A);
  }
  return fl;
}

std::vector<StratumPoint> stratum_points(const StratumContext& ctx, const VertexChart& chart,
                                         const Budget& budget) {
  const int h_eff = chart.vertex.cls == 0 ? ctx.h : ctx.n - ctx.h;
  std::vector<StratumPoint> out;
  for_each_closed_flag(chart.V, h_eff, ctx.m, budget,
                       [&](const Flag& fl, bool) { out.push_back(lift_flag(ctx, chart, fl)); });
  return out;
}

nlohmann::json StratumPoint::to_json(const StratumContext& ctx) const {
  return {{"field", field_to_json(*ctx.T)},
          {"n", ctx.n},
          {"h", ctx.h},
          {"level", ctx.m},
          {"A", A.to_json()},
          {"B", B.to_json()}};
}

StratumPoint StratumPoint::from_json(const nlohmann::json& j) {
  StratumPoint pt;
  pt.A = Lattice::from_json(j.at("A"));
  pt.B = Lattice::from_json(j.at("B"));
  return pt;
}

}  // namespace bts

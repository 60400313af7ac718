#include "btstrata/selftest.hpp"

#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "btstrata/chi.hpp"
#include "btstrata/graph.hpp"

namespace bts {

namespace {

Lattice random_lattice(const FieldPtr& F, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dig(0, F->p() - 1);
  std::uniform_int_distribution<int> ex(0, 2);
  while (true) {
    PMat g(F, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Elt c = F->zero();
        for (int k = 0; k < 3; ++k) c = c + F->from_int(dig(rng)).times_pi(k);
        if (dig(rng) == 0) c = c * F->gen();
        g.at(i, j) = c.times_pi(ex(rng));
      }
    try {
      return Lattice::from_generators(g);
    } catch (const std::invalid_argument&) {
    }
  }
}

struct Reporter {
  std::ostream& out;
  int failures = 0;
  void row(const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS" : "FAIL") << "  " << std::left << std::setw(44) << name << " "
        << detail << "\n";
    if (!ok) ++failures;
  }
};

}  // namespace

int run_selftest(bool quick, std::ostream& out, unsigned long long seed, int jobs) {
  Reporter rep{out};
  const int samples = quick ? 40 : 200;
  const int tmax_counts = quick ? 5 : 7;

  // duality laws over random lattices at level two
  {
    auto T = TowerField::create(3, 1, 2, 16);
    HermitianSpace sp = HermitianSpace::standard(T, 2, FormKind::TI);
    std::mt19937_64 rng(seed);
    int bad = 0;
    for (int s = 0; s < samples; ++s) {
      Lattice L = random_lattice(T, 2, rng);
      Lattice L2 = random_lattice(T, 2, rng);
      if (!(sp.dual(sp.dual(L)) == L.tau_image())) ++bad;
      if (!(sp.dual(L.sum(L2)) == sp.dual(L).intersect(sp.dual(L2)))) ++bad;
      Lattice B = L.sum(L2), C = B.sum(random_lattice(T, 2, rng));
      if (L.index_in(C) != L.index_in(B) + B.index_in(C)) ++bad;
    }
    rep.row("dual-dual equals tau twist; dual of sum", bad == 0,
            std::to_string(samples) + " samples");
  }

  // classifier case split and set laws on the n = 2 window
  {
    StratumContext ctx = StratumContext::make(3, 1, 2, 1, 1, 16);
    Budget budget(200000000ull);
    auto vertices = enumerate_vertex_lattices(ctx.space_e, 2, 1, 1, budget);
    int points = 0, bad = 0;
    std::map<std::string, std::set<std::string>> members;
    std::vector<VertexLattice> plus;
    for (const auto& v : vertices)
      if (v.sign == Sign::Plus) plus.push_back(v);
    for (const auto& v : plus) {
      VertexChart chart = make_chart(ctx, v);
      for (const auto& pt : stratum_points(ctx, chart, budget)) {
        ++points;
        if (!is_point(ctx, pt).ok) ++bad;
        try {
          auto verdicts = classify(ctx, pt);
          if (verdicts.empty()) ++bad;
        } catch (const invariant_error&) {
          ++bad;
        }
        members[v.lat.canonical_key() + "/" + std::to_string(v.cls)].insert(pt.key());
        bool in = v.cls == 0 ? s_membership(ctx, v, pt) : r_membership(ctx, v, pt);
        if (!in) ++bad;
      }
    }
    rep.row("classifier and stratum membership (n=2)", bad == 0,
            std::to_string(points) + " points over " + std::to_string(plus.size()) +
                " vertex lattices");

    int pair_bad = 0, pairs = 0;
    for (const auto& v1 : plus)
      for (const auto& v2 : plus) {
        if (v1.cls != v2.cls) continue;
        ++pairs;
        const auto& s1 = members[v1.lat.canonical_key() + "/" + std::to_string(v1.cls)];
        const auto& s2 = members[v2.lat.canonical_key() + "/" + std::to_string(v2.cls)];
        std::set<std::string> meet;
        for (const auto& k : s1)
          if (s2.count(k)) meet.insert(k);
        auto lam = stratum_intersection(ctx, v1, v2);
        if (lam) {
          const auto& s3 = members[lam->lat.canonical_key() + "/" + std::to_string(lam->cls)];
          if (meet != s3) ++pair_bad;
        } else if (!meet.empty()) {
          ++pair_bad;
        }
      }
    rep.row("same-class stratum intersection law (n=2)", pair_bad == 0,
            std::to_string(pairs) + " pairs");
  }

  // decomposition and dimension of the flag counts
  {
    int bad = 0, cases = 0;
    Budget budget(2000000000ull);
    for (int t = 1; t <= tmax_counts; ++t)
      for (int heff = 0; heff < t; ++heff) {
        if ((t - 1 - heff) % 2 != 0) continue;
        ++cases;
        auto V = FiniteHermitianSpace::standard(3, 1, t);
        DlCounts c = count_points(V, heff, 1, budget, jobs);
        if (c.closed != c.open_id + c.open_w) ++bad;
        int dim = dimension_weyl(stratum_weyl_datum(t, heff).datum);
        if (dim != (t - 1 - heff) / 2 + heff) ++bad;
      }
    rep.row("flag decomposition and dimensions", bad == 0,
            std::to_string(cases) + " (t,h) cases, t <= " + std::to_string(tmax_counts));
  }

  // projective-space counts for the type-n class-1 stratum at h = 1
  {
    int bad = 0;
    Budget budget(200000000ull);
    for (int n : {2, 3}) {
      auto V = FiniteHermitianSpace::standard(3, 1, n, 1);
      DlCounts c = count_points(V, n - 1, 1, budget, jobs);
      unsigned long long qq = 9, pw = 1;
      for (int i = 0; i < n; ++i) pw *= qq;
      unsigned long long expect = (pw - 1) / (qq - 1);
      if (c.closed != expect) ++bad;
    }
    rep.row("projective count of the type-n stratum", bad == 0, "n in {2,3}, level 1");
  }

  // component labeling on the n = 2 window
  {
    StratumContext ctx = StratumContext::make(3, 1, 2, 1, 1, 16);
    Budget budget(200000000ull);
    StrataGraph g = build_graph(ctx, 1, budget);
    int bad = 0;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      bool maximal = true;
      for (auto [a, b] : g.inclusion_edges)
        if (a == static_cast<int>(i)) maximal = false;
      if (g.nodes[i].component != maximal) ++bad;
    }
    rep.row("component labeling (n=2, h=1)", bad == 0,
            std::to_string(g.nodes.size()) + " nodes");
  }

  // intersection-number closed forms
  {
    int bad = 0;
    mpz_class q3 = 3;
    if (!(chi_z(0, 1, q3) == Rational(1, 1))) ++bad;
    if (!(chi_z(1, 2, q3) == Rational(5, 1))) ++bad;
    const int grid = quick ? 12 : 20;
    for (long a = 0; a <= grid; ++a)
      for (long b = a + 1; b <= grid; b += 2)
        for (long q : {3, 5, 7}) {
          mpz_class Q = q;
          if (!(chi_y(a, b, Q) == chi_z(a + 1, b + 1, Q))) ++bad;
          Rational v = chi_z(a, b, Q);
          if (!v.is_integer() || v.num <= 0) ++bad;
        }
    rep.row("chi closed forms, shift identity, integrality", bad == 0,
            "grid a,b <= " + std::to_string(grid));
  }

  // reduction engine step count and conservation
  {
    int bad = 0, cases = 0;
    for (int n = 2; n <= (quick ? 8 : 12); ++n)
      for (int h = 0; h <= n; ++h) {
        if (n - h >= 2) {
          IntersectionProblem p;
          p.n = n;
          p.h = h;
          p.q = 3;
          p.xvals.assign(n - h, 0);
          p.xvals[n - h - 1] = 1;  // core (0, 1)
          p.yvals.assign(h, -1);
          auto red = reduce_problem(p);
          ++cases;
          if (std::holds_alternative<std::string>(red)) ++bad;
          else {
            const auto& r = std::get<Reduction>(red);
            if (static_cast<int>(r.steps.size()) != n - 2) ++bad;
            if (r.a != 0 || r.b != 1 || r.core_case != 'z') ++bad;
          }
        }
        if (h >= 2) {
          IntersectionProblem p;
          p.n = n;
          p.h = h;
          p.q = 3;
          p.xvals.assign(n - h, 0);
          p.yvals.assign(h, -1);
          p.yvals[h - 1] = 0;  // core (-1, 0)
          auto red = reduce_problem(p);
          ++cases;
          if (std::holds_alternative<std::string>(red)) ++bad;
          else {
            const auto& r = std::get<Reduction>(red);
            if (static_cast<int>(r.steps.size()) != n - 2) ++bad;
            if (r.a != -1 || r.b != 0 || r.core_case != 'y') ++bad;
          }
        }
      }
    rep.row("reduction strips and conservation", bad == 0, std::to_string(cases) + " profiles");
  }

  out << (rep.failures == 0 ? "ALL PASS" : "FAILURES: " + std::to_string(rep.failures))
      << "\n";
  return rep.failures;
}

}  // namespace bts

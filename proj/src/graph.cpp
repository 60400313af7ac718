#include "btstrata/graph.hpp"

#include <algorithm>
#include <sstream>

namespace bts {

namespace {

const char* kind_name(FormKind k) {
  switch (k) {
    case FormKind::TI: return "tI";
    case FormKind::TJ: return "tJ";
    default: return "custom";
  }
}

}  // namespace

StrataGraph build_graph(const StratumContext& ctx, int window, const Budget& budget) {
  StrataGraph g;
  g.p = ctx.E->p();
  g.f = ctx.E->f();
  g.n = ctx.n;
  g.h = ctx.h;
  g.window = window;
  g.m = ctx.m;
  g.kind = ctx.space_e.kind();
  g.t_max = ((ctx.n - ctx.h) % 2 != 0) ? ctx.n : ctx.n - 1;
  g.t_min = (ctx.h % 2 != 0) ? 0 : 1;

  auto vertices = enumerate_vertex_lattices(ctx.space_e, ctx.n, ctx.h, window, budget);
  for (auto& v : vertices) {
    if (v.sign != Sign::Plus) continue;
    GraphNode node;
    node.key = v.lat.canonical_key();
    const int h_eff = (v.cls == 0) ? ctx.h : ctx.n - ctx.h;
    node.dim = dimension_weyl(stratum_weyl_datum(v.type, h_eff).datum);
    node.component =
        (v.cls == 0 && v.type == g.t_max) || (v.cls == 1 && v.type == ctx.n - g.t_min);
    node.vertex = std::move(v);
    g.nodes.push_back(std::move(node));
  }
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
    for (int j = 0; j < static_cast<int>(g.nodes.size()); ++j) {
      if (i == j) continue;
      const auto& a = g.nodes[i].vertex;
      const auto& b = g.nodes[j].vertex;
      if (a.cls == b.cls) {
        if (!(a.lat == b.lat) && b.lat.contains_lattice(a.lat))
          g.inclusion_edges.emplace_back(i, j);
      } else if (a.cls == 1 && b.cls == 0) {
        Lattice im = ctx.space_e.dual(a.lat).scaled(1);
        if (b.lat.contains_lattice(im)) g.cross_edges.emplace_back(i, j);
      }
    }
  return g;
}

std::optional<VertexLattice> stratum_intersection(const StratumContext& ctx,
                                                  const VertexLattice& a,
                                                  const VertexLattice& b) {
  if (a.cls != b.cls || a.sign != Sign::Plus || b.sign != Sign::Plus)
    throw std::invalid_argument("stratum_intersection: same-class sign-+ inputs required");
  Lattice meet = a.lat.intersect(b.lat);
  VertexInfo info = classify_vertex(meet, ctx.space_e, ctx.n, ctx.h);
  if (!info.is_vertex[a.cls] || info.sign[a.cls] != Sign::Plus) return std::nullopt;
  return VertexLattice{meet, a.cls, info.type[a.cls], info.sign[a.cls]};
}

std::vector<StratumCounts> open_stratum_counts(const StratumContext& ctx,
                                               const StrataGraph& g, const Budget& budget,
                                               int jobs) {
  const int count = static_cast<int>(g.nodes.size());
  std::vector<StratumCounts> out(count);
  for (int i = 0; i < count; ++i) {
    VertexChart chart = make_chart(ctx, g.nodes[i].vertex);
    const int h_eff = (g.nodes[i].vertex.cls == 0) ? ctx.h : ctx.n - ctx.h;
    out[i].closed = count_points(chart.V, h_eff, ctx.m, budget, jobs).closed;
  }
  // exactness: every sign-+ same-class sublattice must appear in the window;
  // sublattices live between pi^{i+1} Lambda-dual and Lambda
  std::vector<std::vector<int>> subs(count);
  for (int i = 0; i < count; ++i) {
    const auto& v = g.nodes[i].vertex;
    Lattice floor = ctx.space_e.dual(v.lat).scaled(v.cls + 1);
    auto local = enumerate_lattices_between(floor, v.lat, budget);
    for (const auto& L : local) {
      if (L == v.lat) continue;
      VertexInfo info = classify_vertex(L, ctx.space_e, ctx.n, ctx.h);
      if (!info.is_vertex[v.cls] || info.sign[v.cls] != Sign::Plus) continue;
      auto key = L.canonical_key();
      int found = -1;
      for (int j = 0; j < count; ++j)
        if (g.nodes[j].vertex.cls == v.cls && g.nodes[j].key == key) found = j;
      if (found < 0) out[i].exact = false;
      else subs[i].push_back(found);
    }
  }
  // inclusion-exclusion in increasing type order
  std::vector<int> order(count);
  for (int i = 0; i < count; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.nodes[a].vertex.type != g.nodes[b].vertex.type)
      return g.nodes[a].vertex.type < g.nodes[b].vertex.type;
    return a < b;
  });
  for (int idx : order) {
    unsigned long long open = out[idx].closed;
    for (int j : subs[idx]) {
      if (!out[j].exact) out[idx].exact = false;
      open -= out[j].open;
    }
    out[idx].open = open;
  }
  return out;
}

std::string export_graph(const StrataGraph& g, const std::string& format) {
  std::ostringstream os;
  auto header = [&](const char* comment) {
    os << comment << " p=" << g.p << " f=" << g.f << " n=" << g.n << " h=" << g.h
       << " kind=" << kind_name(g.kind) << " window=" << g.window << " level=" << g.m
       << " t_max=" << g.t_max << " t_min=" << g.t_min << "\n";
  };
  if (format == "dot") {
    header("//");
    os << "graph strata {\n";
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      const auto& nd = g.nodes[i];
      os << "  v" << i << " [label=\"" << nd.vertex.cls << "/" << nd.vertex.type << "/"
         << nd.dim << "\"";
      if (nd.component) os << " shape=doublecircle";
      os << "];\n";
    }
    for (auto [a, b] : g.inclusion_edges) os << "  v" << a << " -- v" << b << ";\n";
    for (auto [a, b] : g.cross_edges)
      os << "  v" << a << " -- v" << b << " [style=dashed];\n";
    os << "}\n";
    return os.str();
  }
  if (format == "json") {
    nlohmann::json j;
    j["config"] = {{"p", g.p},     {"f", g.f},           {"n", g.n},
                   {"h", g.h},     {"kind", kind_name(g.kind)}, {"window", g.window},
                   {"level", g.m}, {"t_max", g.t_max},   {"t_min", g.t_min}};
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& nd : g.nodes) {
      nlohmann::json nj = nd.vertex.to_json();
      nj["dim"] = nd.dim;
      nj["component"] = nd.component;
      nodes.push_back(std::move(nj));
    }
    j["nodes"] = std::move(nodes);
    nlohmann::json incl = nlohmann::json::array(), cross = nlohmann::json::array();
    for (auto [a, b] : g.inclusion_edges) incl.push_back({a, b});
    for (auto [a, b] : g.cross_edges) cross.push_back({a, b});
    j["inclusion_edges"] = std::move(incl);
    j["cross_edges"] = std::move(cross);
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    header("#");
    os << "record,id,class,type,sign,dim,component,from,to\n";
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      const auto& nd = g.nodes[i];
      os << "node," << i << "," << nd.vertex.cls << "," << nd.vertex.type << ","
         << sign_name(nd.vertex.sign) << "," << nd.dim << "," << (nd.component ? 1 : 0)
         << ",,\n";
    }
    for (auto [a, b] : g.inclusion_edges)
      os << "inclusion,,,,,,," << a << "," << b << "\n";
    for (auto [a, b] : g.cross_edges) os << "cross,,,,,,," << a << "," << b << "\n";
    return os.str();
  }
  throw std::invalid_argument("export_graph: format must be dot, json, or csv");
}

}  // namespace bts

#ifndef BTSTRATA_GRAPH_HPP
#define BTSTRATA_GRAPH_HPP

#include <map>
#include <optional>

#include "btstrata/strata.hpp"

namespace bts {

struct GraphNode {
  VertexLattice vertex;
  int dim = 0;        // stratum dimension from the Weyl datum
  bool component = false;
  std::string key;
};

struct StrataGraph {
  std::uint32_t p = 3;
  int f = 1, n = 1, h = 0, window = 1, m = 1;
  FormKind kind = FormKind::TI;
  int t_max = 0, t_min = 0;
  std::vector<GraphNode> nodes;
  // index pairs into nodes; inclusion edges (i, j) mean node i strictly
  // contained in node j, same class; cross edges (i, j) pair a class-1 node i
  // with a class-0 node j such that pi * dual(i) <= j
  std::vector<std::pair<int, int>> inclusion_edges;
  std::vector<std::pair<int, int>> cross_edges;
};

StrataGraph build_graph(const StratumContext& ctx, int window, const Budget& budget);

// intersection of same-class sign-+ strata: the classified intersection
// lattice, or nullopt when the intersection is not a sign-+ vertex lattice
std::optional<VertexLattice> stratum_intersection(const StratumContext& ctx,
                                                  const VertexLattice& a,
                                                  const VertexLattice& b);

struct StratumCounts {
  unsigned long long closed = 0;
  unsigned long long open = 0;
  bool exact = true;  // false when sign-+ sublattices fall outside the window
};

// closed counts by flag enumeration, open counts by inclusion-exclusion over
// the window poset; nodes whose sublattices escape the window are flagged
// inexact (their open count is then only a lower bound)
std::vector<StratumCounts> open_stratum_counts(const StratumContext& ctx,
                                               const StrataGraph& g, const Budget& budget,
                                               int jobs = 1);

std::string export_graph(const StrataGraph& g, const std::string& format);

}  // namespace bts

#endif

#ifndef BTSTRATA_STRATA_HPP
#define BTSTRATA_STRATA_HPP

#include "btstrata/dl.hpp"
#include "btstrata/hermitian.hpp"

namespace bts {

// Ambient data for the lattice-pair point model at finite level m.
struct StratumContext {
  FieldPtr E;  // degree-2f level
  FieldPtr T;  // degree-2fm level
  HermitianSpace space_e;
  HermitianSpace space_t;
  int n = 1, h = 0, m = 1;

  static StratumContext make(std::uint32_t p, int f, int n, int h, int m, int precision,
                             FormKind kind = FormKind::Custom /* Custom = pick by parity */);
};

// Pair (A, B) of lattices over the level-m ring.
struct StratumPoint {
  Lattice A, B;
  std::string key() const { return A.canonical_key() + "#" + B.canonical_key(); }
  nlohmann::json to_json(const StratumContext& ctx) const;
  static StratumPoint from_json(const nlohmann::json& j);
};

struct PointCheck {
  bool ok = true;
  std::string violation;  // first failed condition, empty when ok
};

// the chain conditions of the point model, with diagnostics
PointCheck is_point(const StratumContext& ctx, const StratumPoint& pt);

// smallest tau-invariant lattice containing L and the number of strictly
// increasing closure steps; bound guards against non-stabilizing input
std::pair<Lattice, int> tau_closure(const Lattice& L, int bound);

struct ClassifierVerdict {
  int cls = 0;        // 0: closure of B is the witness; 1: closure of A
  Lattice witness;    // tau-invariant vertex lattice over the level-m field
  int type = 0;
  Sign sign = Sign::Neither;
  int depth_c = 0, depth_d = 0;  // closure depths of A and B
};

// constructive case split: returns every case whose diagram holds (at least
// one must, else the classification law itself is violated)
std::vector<ClassifierVerdict> classify(const StratumContext& ctx, const StratumPoint& pt);

// full defining diagrams of the stratum sets, checked condition by condition
bool s_membership(const StratumContext& ctx, const VertexLattice& lambda0,
                  const StratumPoint& pt);
bool r_membership(const StratumContext& ctx, const VertexLattice& lambda1,
                  const StratumPoint& pt);

enum class CycleKind { Z, Y };
bool cycle_membership(const StratumContext& ctx, const StratumPoint& pt,
                      std::span<const Elt> v, CycleKind kind);

// chart of a vertex lattice: adapted basis over E, its embedding, and the
// induced finite hermitian space on Lambda / pi^{i+1} Lambda-dual
struct VertexChart {
  VertexLattice vertex;
  Lattice lambda_t;        // embedded into the level-m field
  Lattice lambda_minus_t;  // pi^{i+1} * dual, embedded
  PMat adapted_t;          // embedded adapted basis columns
  std::vector<int> vcols;  // columns spanning the quotient (divisor pi)
  FiniteHermitianSpace V;
};

VertexChart make_chart(const StratumContext& ctx, const VertexLattice& vertex);

// preimage of a flag under reduction; the result satisfies is_point
StratumPoint lift_flag(const StratumContext& ctx, const VertexChart& chart, const Flag& fl);
Flag reduce_point(const StratumContext& ctx, const VertexChart& chart, const StratumPoint& pt);

// all points of the closed stratum of the chart's vertex lattice at level m
std::vector<StratumPoint> stratum_points(const StratumContext& ctx, const VertexChart& chart,
                                         const Budget& budget);

}  // namespace bts

#endif

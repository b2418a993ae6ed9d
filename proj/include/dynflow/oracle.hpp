#pragma once

#include <string>
#include <vector>

#include "dynflow/graph.hpp"
#include "dynflow/state.hpp"

namespace dynflow::oracle {

// Sequential reference code. Nothing here shares a code path with the
// push-relabel solvers; it is meant to fail independently of them.

struct Report {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  void merge(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

/// Dinic's blocking-flow max flow on the raw edge list.
Capacity dinic_maxflow(const EdgeListGraph& g, VertexId s, VertexId t);

/// Minimum s-t cut by enumerating every subset of V \ {s, t}. n <= 24.
Capacity brute_force_min_cut(const EdgeListGraph& g, VertexId s, VertexId t);

/// Per-slot flow reconstructed from residuals: f = cap - cf where positive,
/// 0 elsewhere.
struct ConstructedFlow {
  std::vector<Capacity> f;
};

// Throws std::logic_error when a slot pair violates cf + cf' == cap + cap'.
ConstructedFlow construct_flow(const SolverState& st, const BiCsrGraph& g);

/// Capacity bounds of f, and per-vertex imbalance compared with st.excess.
Report verify_preflow(const ConstructedFlow& flow, const BiCsrGraph& g, const SolverState& st);

/// (a) cut capacity == claimed flow, (b) A->B original slots have cf == 0,
/// (c) no constructed flow B->A, (d) s in A and t in B.
Report verify_cut(const CutCertificate& cert, const BiCsrGraph& g, const SolverState& st, Capacity claimed_flow);

/// Per-vertex residual edge distance to the nearest base, n if none.
struct DistanceLabels {
  std::vector<Height> d;
};
DistanceLabels residual_distances(const SolverState& st, const BiCsrGraph& g, const std::vector<VertexId>& bases);

/// Phase-boundary state invariants: cf >= 0, paired residual sums equal
/// paired capacities, total excess zero, heights in [0, n]. With
/// check_validity, also h(u) <= h(v) + 1 on every residual edge.
Report check_state(const SolverState& st, const BiCsrGraph& g, bool check_validity);

}  // namespace dynflow::oracle

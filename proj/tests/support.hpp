#pragma once

#include <vector>

#include "dynflow/bench.hpp"
#include "dynflow/dynamic_solver.hpp"
#include "dynflow/oracle.hpp"

namespace dynflow::testing {

// s=0, t=3: (0->1,3) (0->2,2) (1->3,2) (2->3,3) (1->2,1). Max flow 5.
inline EdgeListGraph four_edges() { return {4, {{0, 1, 3}, {0, 2, 2}, {1, 3, 2}, {2, 3, 3}, {1, 2, 1}}}; }
inline BiCsrGraph four() { return build_bicsr(four_edges()); }

inline SolverParams deterministic() {
  SolverParams p;
  p.deterministic = true;
  return p;
}

inline SolverParams threaded(unsigned t) {
  SolverParams p;
  p.threads = t;
  return p;
}

inline EdgeId slot(const BiCsrGraph& g, VertexId u, VertexId v) { return *g.find_edge(u, v); }

inline Capacity cf(const SolverState& st, const BiCsrGraph& g, VertexId u, VertexId v) {
  return st.cf[static_cast<std::size_t>(slot(g, u, v))];
}

// Current capacities of st as an edge list, for the oracle.
inline EdgeListGraph current(const SolverState& st, const BiCsrGraph& g) { return to_edge_list(g, st.cap); }

inline std::vector<VertexId> height_zero_bases(const SolverState& st) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < st.n; ++v) {
    if (v == st.sink || is_deficient(st, v)) out.push_back(v);
  }
  return out;
}

}  // namespace dynflow::testing

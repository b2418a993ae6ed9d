#pragma once

#include <optional>
#include <vector>

#include "dynflow/graph.hpp"

namespace dynflow {

/// Min-cut proof object: A holds the vertices that cannot reach a height-0
/// base (sink or deficient vertex) in the residual graph, B the rest.
struct CutCertificate {
  std::vector<VertexId> partition_a;
  std::vector<VertexId> partition_b;
  std::vector<std::uint8_t> in_a;  // indexed by vertex, 1 for A
  Capacity cut_capacity = 0;
};

/// Complete algorithmic state at a phase boundary. `cap` is the capacity
/// vector currently in effect: a copy of the graph's cap0 at initialisation,
/// rewritten by dynamic updates so the shared BiCsrGraph stays immutable.
struct SolverState {
  VertexId n = 0;
  VertexId source = 0;
  VertexId sink = 0;
  std::vector<Capacity> cap;
  std::vector<Capacity> cf;
  std::vector<Capacity> excess;
  std::vector<Height> height;
  // Set when a solve terminates; cleared once the state is modified again.
  std::optional<CutCertificate> certificate;
};

// Throws InputError unless 0 <= s, t < n and s != t.
void check_terminals(const BiCsrGraph& g, VertexId s, VertexId t);

SolverState init_residuals(const BiCsrGraph& g, VertexId s, VertexId t);

// Pushes every residual unit out of the source: cf(s,u) -> 0, cf(u,s) -> c_us + c_su.
void saturate_source(SolverState& st, const BiCsrGraph& g);

inline bool is_active(const SolverState& st, VertexId v) {
  const auto i = static_cast<std::size_t>(v);
  return v != st.source && v != st.sink && st.excess[i] > 0 && st.height[i] < st.n;
}

inline bool is_deficient(const SolverState& st, VertexId v) {
  return v != st.source && v != st.sink && st.excess[static_cast<std::size_t>(v)] < 0;
}

}  // namespace dynflow

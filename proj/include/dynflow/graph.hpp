#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dynflow/types.hpp"

namespace dynflow {

struct Edge {
  VertexId from = 0;
  VertexId to = 0;
  Capacity cap = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct EdgeListGraph {
  VertexId n = 0;
  std::vector<Edge> edges;
};

struct NormalizeStats {
  std::size_t self_loops_dropped = 0;
  std::size_t parallel_edges_merged = 0;
};

// Validates ids and capacities, drops self-loops and merges parallel
// same-direction edges by summing capacities. Output edges are sorted by (from, to).
EdgeListGraph normalize(const EdgeListGraph& g, NormalizeStats* stats = nullptr);

/// Bidirectional CSR. Every vertex stores its outgoing and incoming neighbours
/// in one sorted run, so each unordered vertex pair {u, v} with an input edge in
/// either direction owns exactly two residual slots, u->v and v->u, linked by
/// rev(). Directions with no input edge are zero-capacity stubs.
class BiCsrGraph {
 public:
  BiCsrGraph() = default;

  VertexId n() const noexcept { return n_; }
  EdgeId m() const noexcept { return static_cast<EdgeId>(adj_.size()); }
  std::size_t original_edge_count() const noexcept { return original_count_; }

  std::span<const EdgeId> offsets() const noexcept { return offsets_; }
  std::span<const VertexId> adj() const noexcept { return adj_; }
  std::span<const EdgeId> rev() const noexcept { return rev_; }
  std::span<const Capacity> cap0() const noexcept { return cap0_; }

  EdgeId begin(VertexId u) const noexcept { return offsets_[static_cast<std::size_t>(u)]; }
  EdgeId end(VertexId u) const noexcept { return offsets_[static_cast<std::size_t>(u) + 1]; }

  VertexId head(EdgeId i) const noexcept { return adj_[static_cast<std::size_t>(i)]; }
  VertexId tail(EdgeId i) const noexcept { return tail_[static_cast<std::size_t>(i)]; }
  EdgeId reverse(EdgeId i) const noexcept { return rev_[static_cast<std::size_t>(i)]; }
  Capacity capacity(EdgeId i) const noexcept { return cap0_[static_cast<std::size_t>(i)]; }
  // True when the slot corresponds to an edge of the input (possibly with capacity 0).
  bool is_original(EdgeId i) const noexcept { return original_[static_cast<std::size_t>(i)] != 0; }

  // Slot of u->v, if the pair exists. O(log deg(u)).
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

  const NormalizeStats& build_stats() const noexcept { return stats_; }

 private:
  friend BiCsrGraph build_bicsr(const EdgeListGraph& g);

  VertexId n_ = 0;
  std::size_t original_count_ = 0;
  std::vector<EdgeId> offsets_{0};
  std::vector<VertexId> adj_;
  std::vector<VertexId> tail_;
  std::vector<EdgeId> rev_;
  std::vector<Capacity> cap0_;
  std::vector<std::uint8_t> original_;
  NormalizeStats stats_;
};

BiCsrGraph build_bicsr(const EdgeListGraph& g);

// Bounds-checked rev lookup; throws std::out_of_range.
EdgeId reverse_edge(const BiCsrGraph& g, EdgeId i);

// Original edges only (stubs dropped), sorted by (from, to). Optionally
// substitutes capacities from `caps` (indexed by slot) for the graph's own.
EdgeListGraph to_edge_list(const BiCsrGraph& g, std::span<const Capacity> caps = {});

}  // namespace dynflow

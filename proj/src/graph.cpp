#include "dynflow/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

namespace dynflow {

EdgeListGraph normalize(const EdgeListGraph& g, NormalizeStats* stats) {
  if (g.n < 0) throw InputError("negative vertex count");
  NormalizeStats local;
  std::vector<Edge> kept;
  kept.reserve(g.edges.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const Edge& e = g.edges[k];
    if (e.from < 0 || e.from >= g.n || e.to < 0 || e.to >= g.n) {
      throw InputError("edge " + std::to_string(k) + ": vertex id out of range [0, " +
                       std::to_string(g.n) + ")");
    }
    if (e.cap < 0) {
      throw InputError("edge " + std::to_string(k) + ": negative capacity " + std::to_string(e.cap));
    }
    if (e.from == e.to) {
      ++local.self_loops_dropped;
      continue;
    }
    kept.push_back(e);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });

  EdgeListGraph out{g.n, {}};
  out.edges.reserve(kept.size());
  for (const Edge& e : kept) {
    if (!out.edges.empty() && out.edges.back().from == e.from && out.edges.back().to == e.to) {
      Capacity& c = out.edges.back().cap;
      if (c > std::numeric_limits<Capacity>::max() - e.cap) throw InputError("capacity overflow");
      c += e.cap;
      ++local.parallel_edges_merged;
    } else {
      out.edges.push_back(e);
    }
  }
  if (stats) *stats = local;
  return out;
}

BiCsrGraph build_bicsr(const EdgeListGraph& input) {
  BiCsrGraph g;
  EdgeListGraph norm = normalize(input, &g.stats_);
  const auto n = static_cast<std::size_t>(norm.n);
  g.n_ = norm.n;
  g.original_count_ = norm.edges.size();

  // Every original edge contributes its own direction and the reverse one.
  struct Slot {
    VertexId from, to;
    Capacity cap;
    bool original;
  };
  std::vector<Slot> slots;
  slots.reserve(norm.edges.size() * 2);
  for (const Edge& e : norm.edges) {
    slots.push_back({e.from, e.to, e.cap, true});
    slots.push_back({e.to, e.from, 0, false});
  }
  // Originals sort ahead of stubs for the same (from, to), so unique() keeps them.
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.original && !b.original;
  });
  slots.erase(std::unique(slots.begin(), slots.end(),
                          [](const Slot& a, const Slot& b) { return a.from == b.from && a.to == b.to; }),
              slots.end());

  const std::size_t m = slots.size();
  g.offsets_.assign(n + 1, 0);
  g.adj_.resize(m);
  g.tail_.resize(m);
  g.cap0_.resize(m);
  g.original_.resize(m);
  g.rev_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    ++g.offsets_[static_cast<std::size_t>(slots[i].from) + 1];
    g.adj_[i] = slots[i].to;
    g.tail_[i] = slots[i].from;
    g.cap0_[i] = slots[i].cap;
    g.original_[i] = slots[i].original ? 1 : 0;
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  for (std::size_t i = 0; i < m; ++i) {
    // Pair always exists by construction.
    g.rev_[i] = *g.find_edge(g.adj_[i], g.tail_[i]);
  }
  return g;
}

std::optional<EdgeId> BiCsrGraph::find_edge(VertexId u, VertexId v) const {
  if (u < 0 || u >= n_) return std::nullopt;
  const auto first = adj_.begin() + begin(u);
  const auto last = adj_.begin() + end(u);
  const auto it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return std::nullopt;
  return static_cast<EdgeId>(it - adj_.begin());
}

EdgeId reverse_edge(const BiCsrGraph& g, EdgeId i) {
  if (i < 0 || i >= g.m()) {
    throw std::out_of_range("edge index " + std::to_string(i) + " out of range [0, " +
                            std::to_string(g.m()) + ")");
  }
  return g.reverse(i);
}

EdgeListGraph to_edge_list(const BiCsrGraph& g, std::span<const Capacity> caps) {
  EdgeListGraph out{g.n(), {}};
  out.edges.reserve(g.original_edge_count());
  for (EdgeId i = 0; i < g.m(); ++i) {
    if (!g.is_original(i)) continue;
    const Capacity c = caps.empty() ? g.capacity(i) : caps[static_cast<std::size_t>(i)];
    out.edges.push_back({g.tail(i), g.head(i), c});
  }
  return out;
}

}  // namespace dynflow

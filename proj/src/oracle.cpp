#include "dynflow/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dynflow::oracle {

namespace {

std::string edge_name(const BiCsrGraph& g, EdgeId i) {
  return std::to_string(g.tail(i)) + "->" + std::to_string(g.head(i));
}

void check_input(const EdgeListGraph& g, VertexId s, VertexId t) {
  if (s < 0 || s >= g.n || t < 0 || t >= g.n) throw InputError("terminal out of range");
  if (s == t) throw InputError("source and sink must differ");
  for (const Edge& e : g.edges) {
    if (e.from < 0 || e.from >= g.n || e.to < 0 || e.to >= g.n) throw InputError("vertex id out of range");
    if (e.cap < 0) throw InputError("negative capacity");
  }
}

class Dinic {
 public:
  explicit Dinic(VertexId n) : head_(static_cast<std::size_t>(n), -1) {}

  void add_arc(VertexId u, VertexId v, Capacity c) {
    arcs_.push_back({v, c, head_[static_cast<std::size_t>(u)]});
    head_[static_cast<std::size_t>(u)] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, 0, head_[static_cast<std::size_t>(v)]});
    head_[static_cast<std::size_t>(v)] = static_cast<int>(arcs_.size()) - 1;
  }

  Capacity run(VertexId s, VertexId t) {
    Capacity total = 0;
    while (levels(s, t)) {
      cursor_ = head_;
      while (Capacity pushed = augment(s, t, std::numeric_limits<Capacity>::max())) total += pushed;
    }
    return total;
  }

 private:
  struct Arc {
    VertexId to;
    Capacity cap;
    int next;
  };

  bool levels(VertexId s, VertexId t) {
    level_.assign(head_.size(), -1);
    std::deque<VertexId> q{s};
    level_[static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop_front();
      for (int a = head_[static_cast<std::size_t>(u)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] < 0) {
          level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push_back(arc.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  Capacity augment(VertexId u, VertexId t, Capacity limit) {
    if (u == t) return limit;
    for (int& a = cursor_[static_cast<std::size_t>(u)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
      Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap <= 0 || level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(u)] + 1) {
        continue;
      }
      if (Capacity got = augment(arc.to, t, std::min(limit, arc.cap))) {
        arc.cap -= got;
        arcs_[static_cast<std::size_t>(a ^ 1)].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> cursor_;
  std::vector<int> level_;
  std::vector<Arc> arcs_;
};

}  // namespace

Capacity dinic_maxflow(const EdgeListGraph& g, VertexId s, VertexId t) {
  check_input(g, s, t);
  Dinic d(g.n);
  for (const Edge& e : g.edges) {
    if (e.from != e.to) d.add_arc(e.from, e.to, e.cap);
  }
  return d.run(s, t);
}

Capacity brute_force_min_cut(const EdgeListGraph& g, VertexId s, VertexId t) {
  check_input(g, s, t);
  if (g.n > 24) throw InputError("brute-force cut enumeration limited to n <= 24");
  std::vector<VertexId> inner;
  for (VertexId v = 0; v < g.n; ++v) {
    if (v != s && v != t) inner.push_back(v);
  }
  Capacity best = std::numeric_limits<Capacity>::max();
  std::vector<std::uint8_t> source_side(static_cast<std::size_t>(g.n));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inner.size()); ++mask) {
    std::fill(source_side.begin(), source_side.end(), 0);
    source_side[static_cast<std::size_t>(s)] = 1;
    for (std::size_t k = 0; k < inner.size(); ++k) {
      if (mask >> k & 1) source_side[static_cast<std::size_t>(inner[k])] = 1;
    }
    Capacity cut = 0;
    for (const Edge& e : g.edges) {
      if (source_side[static_cast<std::size_t>(e.from)] && !source_side[static_cast<std::size_t>(e.to)]) cut += e.cap;
    }
    best = std::min(best, cut);
  }
  return best;
}

ConstructedFlow construct_flow(const SolverState& st, const BiCsrGraph& g) {
  ConstructedFlow out;
  out.f.assign(static_cast<std::size_t>(g.m()), 0);
  for (EdgeId i = 0; i < g.m(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const auto r = static_cast<std::size_t>(g.reverse(i));
    if (st.cf[k] + st.cf[r] != st.cap[k] + st.cap[r]) {
      throw std::logic_error("residual sum broken on " + edge_name(g, i));
    }
    out.f[k] = std::max<Capacity>(0, st.cap[k] - st.cf[k]);
  }
  return out;
}

Report verify_preflow(const ConstructedFlow& flow, const BiCsrGraph& g, const SolverState& st) {
  Report rep;
  std::vector<Capacity> imbalance(static_cast<std::size_t>(g.n()), 0);
  for (EdgeId i = 0; i < g.m(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const Capacity f = flow.f[k];
    if (f < 0 || f > st.cap[k]) {
      rep.add("flow " + std::to_string(f) + " outside [0, " + std::to_string(st.cap[k]) + "] on " + edge_name(g, i));
    }
    if (f > 0 && flow.f[static_cast<std::size_t>(g.reverse(i))] > 0) {
      rep.add("flow in both directions on " + edge_name(g, i));
    }
    imbalance[static_cast<std::size_t>(g.head(i))] += f;
    imbalance[static_cast<std::size_t>(g.tail(i))] -= f;
  }
  for (VertexId v = 0; v < g.n(); ++v) {
    const auto k = static_cast<std::size_t>(v);
    if (imbalance[k] != st.excess[k]) {
      rep.add("vertex " + std::to_string(v) + ": imbalance " + std::to_string(imbalance[k]) + " != excess " +
              std::to_string(st.excess[k]));
    }
  }
  return rep;
}

Report verify_cut(const CutCertificate& cert, const BiCsrGraph& g, const SolverState& st, Capacity claimed_flow) {
  Report rep;
  const auto n = static_cast<std::size_t>(g.n());
  if (cert.in_a.size() != n || cert.partition_a.size() + cert.partition_b.size() != n) {
    rep.add("certificate does not partition the vertex set");
    return rep;
  }
  for (VertexId v : cert.partition_a) {
    if (!cert.in_a[static_cast<std::size_t>(v)]) rep.add("partition lists disagree at vertex " + std::to_string(v));
  }
  for (VertexId v : cert.partition_b) {
    if (cert.in_a[static_cast<std::size_t>(v)]) rep.add("partition lists disagree at vertex " + std::to_string(v));
  }
  if (!cert.in_a[static_cast<std::size_t>(st.source)]) rep.add("source not in A");
  if (cert.in_a[static_cast<std::size_t>(st.sink)]) rep.add("sink not in B");

  Capacity cut = 0;
  for (EdgeId i = 0; i < g.m(); ++i) {
    if (!g.is_original(i)) continue;
    const auto k = static_cast<std::size_t>(i);
    const bool tail_a = cert.in_a[static_cast<std::size_t>(g.tail(i))];
    const bool head_a = cert.in_a[static_cast<std::size_t>(g.head(i))];
    if (tail_a && !head_a) {
      cut += st.cap[k];
      if (st.cf[k] != 0) rep.add("A->B edge " + edge_name(g, i) + " not saturated (cf " + std::to_string(st.cf[k]) + ")");
    } else if (!tail_a && head_a) {
      if (st.cap[k] - st.cf[k] > 0) rep.add("B->A edge " + edge_name(g, i) + " carries flow");
    }
  }
  if (cut != cert.cut_capacity) {
    rep.add("stored cut capacity " + std::to_string(cert.cut_capacity) + " != recomputed " + std::to_string(cut));
  }
  if (cut != claimed_flow) {
    rep.add("cut capacity " + std::to_string(cut) + " != flow " + std::to_string(claimed_flow));
  }
  return rep;
}

DistanceLabels residual_distances(const SolverState& st, const BiCsrGraph& g, const std::vector<VertexId>& bases) {
  // Plain reverse adjacency built from scratch rather than walking rev[].
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<std::vector<VertexId>> into(n);
  for (EdgeId i = 0; i < g.m(); ++i) {
    if (st.cf[static_cast<std::size_t>(i)] > 0) into[static_cast<std::size_t>(g.head(i))].push_back(g.tail(i));
  }
  DistanceLabels out;
  out.d.assign(n, g.n());
  std::deque<VertexId> q;
  for (VertexId b : bases) {
    if (out.d[static_cast<std::size_t>(b)] != 0) {
      out.d[static_cast<std::size_t>(b)] = 0;
      q.push_back(b);
    }
  }
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop_front();
    for (VertexId v : into[static_cast<std::size_t>(u)]) {
      if (out.d[static_cast<std::size_t>(v)] == g.n()) {
        out.d[static_cast<std::size_t>(v)] = out.d[static_cast<std::size_t>(u)] + 1;
        q.push_back(v);
      }
    }
  }
  return out;
}

Report check_state(const SolverState& st, const BiCsrGraph& g, bool check_validity) {
  Report rep;
  for (EdgeId i = 0; i < g.m(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const auto r = static_cast<std::size_t>(g.reverse(i));
    if (st.cf[k] < 0) rep.add("negative residual on " + edge_name(g, i));
    if (st.cf[k] + st.cf[r] != st.cap[k] + st.cap[r]) rep.add("residual sum broken on " + edge_name(g, i));
    if (check_validity && st.cf[k] > 0 && st.height[static_cast<std::size_t>(g.tail(i))] >
                                              st.height[static_cast<std::size_t>(g.head(i))] + 1) {
      rep.add("steep residual edge " + edge_name(g, i));
    }
  }
  if (std::accumulate(st.excess.begin(), st.excess.end(), Capacity{0}) != 0) rep.add("total excess is not zero");
  for (VertexId v = 0; v < st.n; ++v) {
    const Height h = st.height[static_cast<std::size_t>(v)];
    if (h < 0 || h > st.n) rep.add("height of " + std::to_string(v) + " outside [0, n]");
  }
  return rep;
}

}  // namespace dynflow::oracle

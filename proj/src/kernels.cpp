#include "kernels.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace dynflow::detail {

namespace {

constexpr std::size_t kGrain = 64;

// Order-preserving parallel filter over [0, count): emits f(i) when it
// yields a vertex id >= 0.
template <class F>
Worklist compact(WorkerPool& pool, std::size_t count, F&& f) {
  const std::size_t chunks = (count + kGrain - 1) / kGrain;
  std::vector<Worklist> parts(chunks);
  pool.parallel_for(chunks, 1, [&](std::size_t cb, std::size_t ce) {
    for (std::size_t c = cb; c < ce; ++c) {
      const std::size_t hi = std::min(count, (c + 1) * kGrain);
      for (std::size_t i = c * kGrain; i < hi; ++i) {
        const VertexId v = f(i);
        if (v >= 0) parts[c].push_back(v);
      }
    }
  });
  Worklist out;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

bool wants(Direction dir, Capacity e) { return dir == Direction::kPush ? e > 0 : e < 0; }

}  // namespace

std::uint64_t Ownership::conflicts(std::uint8_t both) const {
  std::uint64_t k = 0;
  for (auto t : cf) k += (t & both) == both;
  for (auto t : excess) k += (t & both) == both;
  return k;
}

int relabel_bfs(const Env& env, Direction dir, std::span<const VertexId> bases, VertexId pinned) {
  SolverState& st = env.st;
  const BiCsrGraph& g = env.g;
  const Height n = st.n;

  env.pool.parallel_for(static_cast<std::size_t>(n), 1024, [&](std::size_t b, std::size_t e) {
    for (std::size_t v = b; v < e; ++v) {
      if (env.region.contains(static_cast<VertexId>(v))) st.height[v] = n;
    }
  });
  for (VertexId b : bases) st.height[static_cast<std::size_t>(b)] = 0;

  Worklist frontier(bases.begin(), bases.end());
  Height level = 0;
  int levels = 0;
  while (!frontier.empty()) {
    const Height next = level + 1;
    const std::size_t chunks = (frontier.size() + kGrain - 1) / kGrain;
    std::vector<Worklist> parts(chunks);
    env.pool.parallel_for(chunks, 1, [&](std::size_t cb, std::size_t ce) {
      for (std::size_t c = cb; c < ce; ++c) {
        const std::size_t hi = std::min(frontier.size(), (c + 1) * kGrain);
        for (std::size_t k = c * kGrain; k < hi; ++k) {
          const VertexId u = frontier[k];
          for (EdgeId i = g.begin(u); i < g.end(u); ++i) {
            const VertexId v = g.head(i);
            if (v == pinned || !env.region.contains(v)) continue;
            // push: need v->u residual; pull: need u->v residual.
            const EdgeId r = dir == Direction::kPush ? g.reverse(i) : i;
            if (st.cf[static_cast<std::size_t>(r)] <= 0) continue;
            Height expected = n;
            if (std::atomic_ref(st.height[static_cast<std::size_t>(v)])
                    .compare_exchange_strong(expected, next, std::memory_order_relaxed)) {
              parts[c].push_back(v);
            }
          }
        }
      }
    });
    frontier.clear();
    for (const auto& p : parts) frontier.insert(frontier.end(), p.begin(), p.end());
    level = next;
    ++levels;
  }
  return levels;
}

std::vector<VertexId> collect_bases(const Env& env, Direction dir) {
  const SolverState& st = env.st;
  const VertexId anchor = dir == Direction::kPush ? st.sink : st.source;
  Worklist out = compact(env.pool, static_cast<std::size_t>(st.n), [&](std::size_t i) -> VertexId {
    const auto v = static_cast<VertexId>(i);
    if (v == st.source || v == st.sink || !env.region.contains(v)) return -1;
    // Bases carry the opposite sign to the vertices doing the work.
    return wants(dir, -st.excess[i]) ? v : -1;
  });
  if (env.region.contains(anchor)) out.insert(out.begin(), anchor);
  return out;
}

Worklist collect_active(const Env& env, Direction dir) {
  const SolverState& st = env.st;
  return compact(env.pool, static_cast<std::size_t>(st.n), [&](std::size_t i) -> VertexId {
    const auto v = static_cast<VertexId>(i);
    if (v == st.source || v == st.sink || !env.region.contains(v)) return -1;
    return wants(dir, st.excess[i]) && st.height[i] < st.n ? v : -1;
  });
}

Worklist region_vertices(const Env& env) {
  const SolverState& st = env.st;
  return compact(env.pool, static_cast<std::size_t>(st.n), [&](std::size_t i) -> VertexId {
    const auto v = static_cast<VertexId>(i);
    if (v == st.source || v == st.sink || !env.region.contains(v)) return -1;
    return v;
  });
}

void push_phase(const Env& env, std::span<const VertexId> work, int kernel_cycles, Counters& c) {
  SolverState& st = env.st;
  const BiCsrGraph& g = env.g;
  const Height n = st.n;
  env.pool.parallel_for(work.size(), 16, [&](std::size_t b, std::size_t e) {
    std::uint64_t pushes = 0;
    std::uint64_t relabels = 0;
    for (std::size_t k = b; k < e; ++k) {
      const VertexId u = work[k];
      if (u == st.source || u == st.sink) continue;
      auto& hu = st.height[static_cast<std::size_t>(u)];
      auto& eu = st.excess[static_cast<std::size_t>(u)];
      for (int cycle = 0; cycle < kernel_cycles; ++cycle) {
        const Height h = load(hu);
        const Capacity excess = load(eu);
        if (h >= n || excess <= 0) break;
        env.touch_excess(u);

        // Lowest residual neighbour; first hit wins ties, i.e. smallest id.
        Height best_h = std::numeric_limits<Height>::max();
        EdgeId best = -1;
        for (EdgeId i = g.begin(u); i < g.end(u); ++i) {
          const VertexId v = g.head(i);
          if (!env.region.contains(v)) continue;
          if (load(st.cf[static_cast<std::size_t>(i)]) <= 0) continue;
          env.touch_cf(i);
          const Height hv = load(st.height[static_cast<std::size_t>(v)]);
          if (hv < best_h) {
            best_h = hv;
            best = i;
          }
        }

        if (best >= 0 && h > best_h) {
          auto& forward = st.cf[static_cast<std::size_t>(best)];
          const Capacity d = std::min(excess, load(forward));
          const EdgeId r = g.reverse(best);
          const VertexId v = g.head(best);
          fetch_add(forward, -d);
          fetch_add(st.cf[static_cast<std::size_t>(r)], d);
          fetch_add(eu, -d);
          fetch_add(st.excess[static_cast<std::size_t>(v)], d);
          env.touch_cf(r);
          env.touch_excess(v);
          ++pushes;
        } else {
          // Relabel from the snapshot, never from a re-read of the neighbour.
          const Height target = best < 0 ? n : std::min<Height>(best_h + 1, n);
          store(hu, target);
          ++relabels;
        }
      }
    }
    c.pushes.fetch_add(pushes, std::memory_order_relaxed);
    c.relabels.fetch_add(relabels, std::memory_order_relaxed);
  });
}

void pull_phase(const Env& env, std::span<const VertexId> work, int kernel_cycles, Counters& c) {
  SolverState& st = env.st;
  const BiCsrGraph& g = env.g;
  const Height n = st.n;
  env.pool.parallel_for(work.size(), 16, [&](std::size_t b, std::size_t e) {
    std::uint64_t pulls = 0;
    std::uint64_t relabels = 0;
    for (std::size_t k = b; k < e; ++k) {
      const VertexId u = work[k];
      if (u == st.source || u == st.sink) continue;
      auto& hu = st.height[static_cast<std::size_t>(u)];
      auto& eu = st.excess[static_cast<std::size_t>(u)];
      for (int cycle = 0; cycle < kernel_cycles; ++cycle) {
        const Height h = load(hu);
        const Capacity excess = load(eu);
        if (h >= n || excess >= 0) break;
        env.touch_excess(u);

        Height best_h = std::numeric_limits<Height>::max();
        EdgeId best_in = -1;  // slot v->u
        for (EdgeId i = g.begin(u); i < g.end(u); ++i) {
          const VertexId v = g.head(i);
          if (!env.region.contains(v)) continue;
          const EdgeId in = g.reverse(i);
          if (load(st.cf[static_cast<std::size_t>(in)]) <= 0) continue;
          env.touch_cf(in);
          const Height hv = load(st.height[static_cast<std::size_t>(v)]);
          if (hv < best_h) {
            best_h = hv;
            best_in = in;
          }
        }

        if (best_in >= 0 && h > best_h) {
          auto& incoming = st.cf[static_cast<std::size_t>(best_in)];
          const Capacity d = std::min(-excess, load(incoming));
          const EdgeId out = g.reverse(best_in);
          const VertexId v = g.tail(best_in);
          fetch_add(incoming, -d);
          fetch_add(st.cf[static_cast<std::size_t>(out)], d);
          fetch_add(st.excess[static_cast<std::size_t>(v)], -d);
          fetch_add(eu, d);
          env.touch_cf(out);
          env.touch_excess(v);
          ++pulls;
        } else {
          const Height target = best_in < 0 ? n : std::min<Height>(best_h + 1, n);
          store(hu, target);
          ++relabels;
        }
      }
    }
    c.pushes.fetch_add(pulls, std::memory_order_relaxed);
    c.relabels.fetch_add(relabels, std::memory_order_relaxed);
  });
}

void repair_phase(const Env& env, Direction dir, std::span<const VertexId> scope, Counters& c) {
  SolverState& st = env.st;
  const BiCsrGraph& g = env.g;
  env.pool.parallel_for(scope.size(), 32, [&](std::size_t b, std::size_t e) {
    std::uint64_t repairs = 0;
    for (std::size_t k = b; k < e; ++k) {
      const VertexId u = scope[k];
      if (u == st.source || u == st.sink) continue;
      const Height hu = load(st.height[static_cast<std::size_t>(u)]);
      for (EdgeId i = g.begin(u); i < g.end(u); ++i) {
        const VertexId v = g.head(i);
        if (!env.region.contains(v)) continue;
        const Height hv = load(st.height[static_cast<std::size_t>(v)]);
        if (hu <= hv + 1) continue;
        // push: steep u->v is drained forward; pull: steep (in pull heights)
        // v->u is drained into u. Either way `slot` is consumed by u only.
        const EdgeId slot = dir == Direction::kPush ? i : g.reverse(i);
        auto& residual = st.cf[static_cast<std::size_t>(slot)];
        if (load(residual) <= 0) continue;
        const Capacity x = exchange(residual, Capacity{0});
        if (x <= 0) continue;
        const EdgeId back = g.reverse(slot);
        const VertexId from = g.tail(slot);
        const VertexId to = g.head(slot);
        fetch_add(st.cf[static_cast<std::size_t>(back)], x);
        fetch_add(st.excess[static_cast<std::size_t>(from)], -x);
        fetch_add(st.excess[static_cast<std::size_t>(to)], x);
        env.touch_cf(slot);
        env.touch_cf(back);
        env.touch_excess(from);
        env.touch_excess(to);
        ++repairs;
      }
    }
    c.repairs.fetch_add(repairs, std::memory_order_relaxed);
  });
}

LoopStats run_rounds(const Env& env, const LoopConfig& cfg, Counters& c) {
  using clock = std::chrono::steady_clock;
  LoopStats stats;
  const VertexId pinned = cfg.dir == Direction::kPush ? env.st.source : env.st.sink;
  auto notify = [&](Boundary b) {
    if (cfg.observer && *cfg.observer) (*cfg.observer)(b, env.st);
  };
  const Worklist everything =
      cfg.schedule == Schedule::kTopologyDriven ? region_vertices(env) : Worklist{};

  for (;;) {
    auto t0 = clock::now();
    const auto bases = collect_bases(env, cfg.dir);
    relabel_bfs(env, cfg.dir, bases, pinned);
    Worklist active = collect_active(env, cfg.dir);
    stats.bfs_ms += ms_since(t0);
    notify(Boundary::kAfterRelabel);
    if (active.empty()) break;

    const Worklist& work = cfg.schedule == Schedule::kTopologyDriven ? everything : active;
    t0 = clock::now();
    if (cfg.dir == Direction::kPush) {
      push_phase(env, work, cfg.kernel_cycles, c);
    } else {
      pull_phase(env, work, cfg.kernel_cycles, c);
    }
    stats.phase_ms += ms_since(t0);
    notify(Boundary::kAfterPush);

    t0 = clock::now();
    repair_phase(env, cfg.dir, work, c);
    stats.repair_ms += ms_since(t0);
    ++stats.rounds;
    notify(Boundary::kAfterRepair);

    if (cfg.operation_limit > 0 && c.total() > cfg.operation_limit) {
      throw std::runtime_error("push/relabel operation ceiling exceeded (" + std::to_string(c.total()) +
                               " > " + std::to_string(cfg.operation_limit) + ")");
    }
  }
  return stats;
}

Capacity height_zero_excess(const SolverState& st) {
  Capacity flow = 0;
  for (std::size_t v = 0; v < st.height.size(); ++v) {
    if (st.height[v] == 0) flow += st.excess[v];
  }
  return flow;
}

unsigned resolve_workers(const SolverParams& p) {
  return p.deterministic ? 1u : WorkerPool::resolve(p.threads);
}

int resolve_kernel_cycles(const SolverParams& p, const BiCsrGraph& g) {
  if (!p.kernel_cycles) return default_kernel_cycles(g);
  if (*p.kernel_cycles < 1) throw InputError("kernel_cycles must be >= 1");
  return *p.kernel_cycles;
}

std::uint64_t resolve_limit(const SolverParams& p, const BiCsrGraph& g) {
  return p.operation_limit > 0 ? p.operation_limit : operation_ceiling(g.n(), g.m());
}

}  // namespace dynflow::detail

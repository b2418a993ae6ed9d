#include "dynflow/static_solver.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "kernels.hpp"

namespace dynflow {

int default_kernel_cycles(const BiCsrGraph& g) {
  if (g.n() <= 0) return 1;
  const auto e = static_cast<std::int64_t>(g.original_edge_count());
  const auto n = static_cast<std::int64_t>(g.n());
  return static_cast<int>(std::max<std::int64_t>(1, (e + n - 1) / n));
}

std::uint64_t operation_ceiling(VertexId n, EdgeId m) {
  const long double vn = n;
  const long double vm = m;
  const long double bound = vn * vn + vn * vm + 4.0L * vn * vn * (vn + vm);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (bound >= static_cast<long double>(kMax)) return kMax;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(bound));
}

void backward_bfs(SolverState& st, const BiCsrGraph& g, WorkerPool& pool) {
  const detail::Env env{st, g, pool, {}};
  const VertexId bases[] = {st.sink};
  detail::relabel_bfs(env, detail::Direction::kPush, bases, -1);
}

void backward_bfs(SolverState& st, const BiCsrGraph& g) {
  WorkerPool pool(1);
  backward_bfs(st, g, pool);
}

Worklist active_worklist(const SolverState& st, WorkerPool& pool) {
  // collect_active only reads the state and never touches the graph.
  static const BiCsrGraph kNoGraph;
  const detail::Env env{const_cast<SolverState&>(st), kNoGraph, pool, {}};
  return detail::collect_active(env, detail::Direction::kPush);
}

Worklist active_worklist(const SolverState& st) {
  WorkerPool pool(1);
  return active_worklist(st, pool);
}

void push_relabel_phase(SolverState& st, const BiCsrGraph& g, const Worklist& work, int kernel_cycles,
                        WorkerPool& pool, PhaseCounters* counters) {
  if (kernel_cycles < 1) throw InputError("kernel_cycles must be >= 1");
  detail::Counters c;
  detail::push_phase({st, g, pool, {}}, work, kernel_cycles, c);
  if (counters) {
    counters->pushes += c.pushes;
    counters->relabels += c.relabels;
  }
}

void push_relabel_phase(SolverState& st, const BiCsrGraph& g, const Worklist& work, int kernel_cycles) {
  WorkerPool pool(1);
  push_relabel_phase(st, g, work, kernel_cycles, pool);
}

void remove_invalid_edges(SolverState& st, const BiCsrGraph& g, const Worklist& scope, WorkerPool& pool,
                          PhaseCounters* counters) {
  detail::Counters c;
  detail::repair_phase({st, g, pool, {}}, detail::Direction::kPush, scope, c);
  if (counters) counters->repairs += c.repairs;
}

void remove_invalid_edges(SolverState& st, const BiCsrGraph& g, const Worklist& scope) {
  WorkerPool pool(1);
  remove_invalid_edges(st, g, scope, pool);
}

CutCertificate extract_certificate(const SolverState& st, const BiCsrGraph& g) {
  for (VertexId v = 0; v < st.n; ++v) {
    if (is_active(st, v)) {
      throw std::logic_error("certificate requested before termination: vertex " + std::to_string(v) +
                             " is still active");
    }
  }
  CutCertificate cert;
  cert.in_a.assign(static_cast<std::size_t>(st.n), 0);
  for (VertexId v = 0; v < st.n; ++v) {
    if (st.height[static_cast<std::size_t>(v)] >= st.n) {
      cert.in_a[static_cast<std::size_t>(v)] = 1;
      cert.partition_a.push_back(v);
    } else {
      cert.partition_b.push_back(v);
    }
  }
  for (EdgeId i = 0; i < g.m(); ++i) {
    if (!g.is_original(i)) continue;
    if (cert.in_a[static_cast<std::size_t>(g.tail(i))] && !cert.in_a[static_cast<std::size_t>(g.head(i))]) {
      cert.cut_capacity += st.cap[static_cast<std::size_t>(i)];
    }
  }
  return cert;
}

FlowResult solve_static(SolverState& st, const BiCsrGraph& g, VertexId s, VertexId t, const SolverParams& params) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const int cycles = detail::resolve_kernel_cycles(params, g);

  FlowResult result;
  st = init_residuals(g, s, t);
  saturate_source(st, g);
  WorkerPool pool(detail::resolve_workers(params));
  result.phase_times.setup_ms = detail::ms_since(start);

  detail::Counters counters;
  const detail::Env env{st, g, pool, {}};
  const detail::LoopConfig cfg{detail::Direction::kPush, cycles, params.schedule, detail::resolve_limit(params, g),
                               &params.observer};
  const auto stats = detail::run_rounds(env, cfg, counters);

  // Without concurrent repair races no vertex is deficient and this is e(t).
  result.flow_value = detail::height_zero_excess(st);
  result.rounds = stats.rounds;
  result.pushes = counters.pushes;
  result.relabels = counters.relabels;
  result.repairs = counters.repairs;
  result.certificate = extract_certificate(st, g);
  st.certificate = result.certificate;
  result.phase_times.bfs_ms = stats.bfs_ms;
  result.phase_times.push_ms = stats.phase_ms;
  result.phase_times.repair_ms = stats.repair_ms;
  result.phase_times.total_ms = detail::ms_since(start);
  return result;
}

FlowResult solve_static(const BiCsrGraph& g, VertexId s, VertexId t, const SolverParams& params) {
  SolverState st;
  return solve_static(st, g, s, t, params);
}

}  // namespace dynflow

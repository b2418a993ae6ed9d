#include "dynflow/dynamic_solver.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "kernels.hpp"

namespace dynflow {

namespace {

std::string describe(std::size_t k, const EdgeUpdate& u) {
  return "update " + std::to_string(k) + " (" + std::to_string(u.from) + " -> " + std::to_string(u.to) + ")";
}

constexpr std::uint8_t kPushSide = 1;
constexpr std::uint8_t kPullSide = 2;

void finish(FlowResult& r, SolverState& st, const BiCsrGraph& g, const detail::Counters& c) {
  r.flow_value = detail::height_zero_excess(st);
  r.pushes = c.pushes;
  r.relabels = c.relabels;
  r.repairs = c.repairs;
  r.certificate = extract_certificate(st, g);
  st.certificate = r.certificate;
}

void prepare(SolverState& st, const BiCsrGraph& g, const UpdateBatch& batch) {
  apply_updates(st, g, batch);
  recompute_excess(st, g);
  saturate_source(st, g);
}

}  // namespace

void validate_batch(const BiCsrGraph& g, const UpdateBatch& batch) {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (std::size_t k = 0; k < batch.updates.size(); ++k) {
    const EdgeUpdate& u = batch.updates[k];
    if (u.from < 0 || u.from >= g.n() || u.to < 0 || u.to >= g.n()) {
      throw InputError(describe(k, u) + ": vertex id out of range");
    }
    if (u.new_cap < 0) throw InputError(describe(k, u) + ": negative capacity");
    const auto slot = g.find_edge(u.from, u.to);
    if (!slot || !g.is_original(*slot)) throw InputError(describe(k, u) + ": no such edge in the graph");
    if (!seen.emplace(u.from, u.to).second) throw InputError(describe(k, u) + ": duplicate edge in batch");
  }
}

void apply_updates(SolverState& st, const BiCsrGraph& g, const UpdateBatch& batch) {
  validate_batch(g, batch);
  std::vector<EdgeId> touched;
  touched.reserve(batch.updates.size());
  for (const EdgeUpdate& u : batch.updates) {
    const EdgeId i = *g.find_edge(u.from, u.to);
    const auto k = static_cast<std::size_t>(i);
    st.cf[k] += u.new_cap - st.cap[k];
    st.cap[k] = u.new_cap;
    touched.push_back(i);
  }
  // Only re-weighted slots can have gone negative.
  for (EdgeId i : touched) {
    auto& residual = st.cf[static_cast<std::size_t>(i)];
    if (residual < 0) {
      st.cf[static_cast<std::size_t>(g.reverse(i))] += residual;
      residual = 0;
    }
  }
  st.certificate.reset();
}

void recompute_excess(SolverState& st, const BiCsrGraph& g) {
  std::fill(st.excess.begin(), st.excess.end(), 0);
  for (EdgeId i = 0; i < g.m(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const Capacity f = st.cap[k] - st.cf[k];
    if (f <= 0) continue;
    st.excess[static_cast<std::size_t>(g.head(i))] += f;
    st.excess[static_cast<std::size_t>(g.tail(i))] -= f;
  }
}

void backward_bfs_dynamic(SolverState& st, const BiCsrGraph& g, WorkerPool& pool) {
  const detail::Env env{st, g, pool, {}};
  const auto bases = detail::collect_bases(env, detail::Direction::kPush);
  detail::relabel_bfs(env, detail::Direction::kPush, bases, st.source);
}

void backward_bfs_dynamic(SolverState& st, const BiCsrGraph& g) {
  WorkerPool pool(1);
  backward_bfs_dynamic(st, g, pool);
}

void forward_bfs_pull(SolverState& st, const BiCsrGraph& g, WorkerPool& pool) {
  const detail::Env env{st, g, pool, {}};
  const auto bases = detail::collect_bases(env, detail::Direction::kPull);
  detail::relabel_bfs(env, detail::Direction::kPull, bases, st.sink);
}

void pull_relabel_phase(SolverState& st, const BiCsrGraph& g, const Worklist& work, int kernel_cycles,
                        WorkerPool& pool, PhaseCounters* counters) {
  if (kernel_cycles < 1) throw InputError("kernel_cycles must be >= 1");
  detail::Counters c;
  detail::pull_phase({st, g, pool, {}}, work, kernel_cycles, c);
  if (counters) {
    counters->pushes += c.pushes;
    counters->relabels += c.relabels;
  }
}

void pull_relabel_phase(SolverState& st, const BiCsrGraph& g, const Worklist& work, int kernel_cycles) {
  WorkerPool pool(1);
  pull_relabel_phase(st, g, work, kernel_cycles, pool);
}

FlowResult solve_dynamic(SolverState& st, const BiCsrGraph& g, const UpdateBatch& batch,
                         const SolverParams& params) {
  const auto start = std::chrono::steady_clock::now();
  if (st.n != g.n() || st.cf.size() != static_cast<std::size_t>(g.m())) {
    throw InputError("solver state does not belong to this graph");
  }
  const int cycles = detail::resolve_kernel_cycles(params, g);
  FlowResult result;
  prepare(st, g, batch);
  WorkerPool pool(detail::resolve_workers(params));
  result.phase_times.setup_ms = detail::ms_since(start);

  detail::Counters counters;
  const detail::Env env{st, g, pool, {}};
  const detail::LoopConfig cfg{detail::Direction::kPush, cycles, params.schedule, detail::resolve_limit(params, g),
                               &params.observer};
  const auto stats = detail::run_rounds(env, cfg, counters);
  finish(result, st, g, counters);
  result.rounds = stats.rounds;
  result.phase_times.bfs_ms = stats.bfs_ms;
  result.phase_times.push_ms = stats.phase_ms;
  result.phase_times.repair_ms = stats.repair_ms;
  result.phase_times.total_ms = detail::ms_since(start);
  return result;
}

FlowResult solve_dynamic_pushpull(SolverState& st, const BiCsrGraph& g, const UpdateBatch& batch,
                                  const SolverParams& params) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  if (!st.certificate) {
    throw std::logic_error("push-pull update needs the cut certificate of a completed solve");
  }
  if (st.n != g.n() || st.cf.size() != static_cast<std::size_t>(g.m())) {
    throw InputError("solver state does not belong to this graph");
  }
  const int cycles = detail::resolve_kernel_cycles(params, g);
  const std::uint64_t limit = detail::resolve_limit(params, g);
  const std::vector<std::uint8_t> source_side = st.certificate->in_a;

  FlowResult result;
  prepare(st, g, batch);

  // Close the old cut: with no residual S->T edge left, nothing computed on
  // one side can reach the other.
  for (EdgeId i = 0; i < g.m(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!source_side[static_cast<std::size_t>(g.tail(i))] || source_side[static_cast<std::size_t>(g.head(i))]) continue;
    const Capacity x = st.cf[k];
    if (x <= 0) continue;
    st.cf[k] = 0;
    st.cf[static_cast<std::size_t>(g.reverse(i))] += x;
    st.excess[static_cast<std::size_t>(g.tail(i))] -= x;
    st.excess[static_cast<std::size_t>(g.head(i))] += x;
  }

  std::vector<std::uint8_t> region(source_side.size());
  for (std::size_t v = 0; v < region.size(); ++v) region[v] = source_side[v] ? kPullSide : kPushSide;

  detail::Ownership owners;
  if (params.track_ownership) {
    owners.cf.assign(static_cast<std::size_t>(g.m()), 0);
    owners.excess.assign(static_cast<std::size_t>(g.n()), 0);
  }
  detail::Ownership* tags = params.track_ownership ? &owners : nullptr;

  const unsigned workers = detail::resolve_workers(params);
  const unsigned push_workers = std::max(1u, (workers + 1) / 2);
  const unsigned pull_workers = std::max(1u, workers / 2);
  result.phase_times.setup_ms = detail::ms_since(start);

  detail::Counters push_counters;
  detail::Counters pull_counters;
  detail::LoopStats push_stats;
  detail::LoopStats pull_stats;
  const detail::LoopConfig push_cfg{detail::Direction::kPush, cycles, params.schedule, limit, nullptr};
  const detail::LoopConfig pull_cfg{detail::Direction::kPull, cycles, params.schedule, limit, nullptr};

  auto t0 = clock::now();
  if (workers == 1) {
    WorkerPool pool(1);
    push_stats = detail::run_rounds({st, g, pool, {region, kPushSide}, tags, kPushSide}, push_cfg, push_counters);
    pull_stats = detail::run_rounds({st, g, pool, {region, kPullSide}, tags, kPullSide}, pull_cfg, pull_counters);
  } else {
    std::exception_ptr pull_error;
    std::thread pull_thread([&] {
      try {
        WorkerPool pool(pull_workers);
        pull_stats =
            detail::run_rounds({st, g, pool, {region, kPullSide}, tags, kPullSide}, pull_cfg, pull_counters);
      } catch (...) {
        pull_error = std::current_exception();
      }
    });
    std::exception_ptr push_error;
    try {
      WorkerPool pool(push_workers);
      push_stats = detail::run_rounds({st, g, pool, {region, kPushSide}, tags, kPushSide}, push_cfg, push_counters);
    } catch (...) {
      push_error = std::current_exception();
    }
    pull_thread.join();
    if (push_error) std::rethrow_exception(push_error);
    if (pull_error) std::rethrow_exception(pull_error);
  }
  result.phase_times.pipelines_ms = detail::ms_since(t0);
  if (tags) result.ownership_conflicts = owners.conflicts(kPushSide | kPullSide);

  // Leftover work: overflowing vertices on the sink side that can still reach
  // deficient vertices on the source side.
  WorkerPool pool(workers);
  detail::Counters final_counters;
  detail::LoopConfig final_cfg{detail::Direction::kPush, cycles, params.schedule, limit, &params.observer};
  const auto final_stats = detail::run_rounds({st, g, pool, {}}, final_cfg, final_counters);

  finish(result, st, g, final_counters);
  result.pushes += push_counters.pushes + pull_counters.pushes;
  result.relabels += push_counters.relabels + pull_counters.relabels;
  result.repairs += push_counters.repairs + pull_counters.repairs;
  result.rounds = push_stats.rounds + pull_stats.rounds + final_stats.rounds;
  result.phase_times.bfs_ms = push_stats.bfs_ms + pull_stats.bfs_ms + final_stats.bfs_ms;
  result.phase_times.push_ms = push_stats.phase_ms + pull_stats.phase_ms + final_stats.phase_ms;
  result.phase_times.repair_ms = push_stats.repair_ms + pull_stats.repair_ms + final_stats.repair_ms;
  result.phase_times.total_ms = detail::ms_since(start);
  return result;
}

BiCsrGraph with_updates(const BiCsrGraph& g, const UpdateBatch& batch) {
  validate_batch(g, batch);
  std::vector<Capacity> caps(g.cap0().begin(), g.cap0().end());
  for (const EdgeUpdate& u : batch.updates) caps[static_cast<std::size_t>(*g.find_edge(u.from, u.to))] = u.new_cap;
  return build_bicsr(to_edge_list(g, caps));
}

}  // namespace dynflow

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dynflow/graph.hpp"
#include "dynflow/parallel.hpp"
#include "dynflow/state.hpp"

namespace dynflow {

using Worklist = std::vector<VertexId>;

enum class Schedule {
  kDataDriven,      // phases run over an explicit list of active vertices
  kTopologyDriven,  // phases run over every non-terminal vertex
};

enum class Boundary {
  kAfterRelabel,  // global relabel (backward BFS) finished
  kAfterPush,     // push-relabel phase finished
  kAfterRepair,   // invalid-edge repair finished: a round boundary
};

using Observer = std::function<void(Boundary, const SolverState&)>;

struct SolverParams {
  // Max push/relabel iterations per active vertex per phase. Unset means
  // default_kernel_cycles() of the graph.
  std::optional<int> kernel_cycles;
  Schedule schedule = Schedule::kDataDriven;
  // Single worker, vertex-id order.
  bool deterministic = false;
  // Worker count; 0 means hardware concurrency. Ignored when deterministic.
  unsigned threads = 0;
  // Push+relabel+repair budget; 0 means operation_ceiling() of the graph.
  std::uint64_t operation_limit = 0;
  // Called at every phase boundary (single-threaded, no phase in flight).
  Observer observer;
  // Push-pull mode only: tag every residual/excess entry with the pipeline
  // touching it and count entries touched by both.
  bool track_ownership = false;
};

struct PhaseTimes {
  double setup_ms = 0;
  double bfs_ms = 0;
  double push_ms = 0;
  double repair_ms = 0;
  double pipelines_ms = 0;  // concurrent push/pull pipelines (push-pull mode)
  double total_ms = 0;
};

struct FlowResult {
  Capacity flow_value = 0;
  std::uint64_t rounds = 0;
  std::uint64_t pushes = 0;
  std::uint64_t relabels = 0;
  std::uint64_t repairs = 0;
  PhaseTimes phase_times;
  CutCertificate certificate;
  std::uint64_t ownership_conflicts = 0;

  std::uint64_t operations() const noexcept { return pushes + relabels + repairs; }
};

// max(1, ceil(original edges / n)).
int default_kernel_cycles(const BiCsrGraph& g);

// n^2 relabels + n*m saturating pushes + 4 n^2 (n + m) non-saturating pushes,
// saturated at UINT64_MAX.
std::uint64_t operation_ceiling(VertexId n, EdgeId m);

/// Level-synchronous BFS from the sink over reversed residual edges: sets
/// height to the residual edge distance to t, or n when t is unreachable.
void backward_bfs(SolverState& st, const BiCsrGraph& g, WorkerPool& pool);
void backward_bfs(SolverState& st, const BiCsrGraph& g);

/// Every v outside {s, t} with excess > 0 and height < n, ascending.
Worklist active_worklist(const SolverState& st, WorkerPool& pool);
Worklist active_worklist(const SolverState& st);

/// One bounded push-relabel phase over `work`. Returns the number of
/// (pushes, relabels) performed through the optional counters.
struct PhaseCounters {
  std::uint64_t pushes = 0;
  std::uint64_t relabels = 0;
  std::uint64_t repairs = 0;
};
void push_relabel_phase(SolverState& st, const BiCsrGraph& g, const Worklist& work, int kernel_cycles,
                        WorkerPool& pool, PhaseCounters* counters = nullptr);
void push_relabel_phase(SolverState& st, const BiCsrGraph& g, const Worklist& work, int kernel_cycles);

/// Saturates every steep residual edge (h(u) > h(v) + 1) leaving a vertex in `scope`.
void remove_invalid_edges(SolverState& st, const BiCsrGraph& g, const Worklist& scope, WorkerPool& pool,
                          PhaseCounters* counters = nullptr);
void remove_invalid_edges(SolverState& st, const BiCsrGraph& g, const Worklist& scope);

/// Throws std::logic_error if an active vertex remains.
CutCertificate extract_certificate(const SolverState& st, const BiCsrGraph& g);

/// Runs the full static computation on a fresh state built from g.
FlowResult solve_static(const BiCsrGraph& g, VertexId s, VertexId t, const SolverParams& params = {});

/// Same, reinitialising `st` first, so the terminated state can seed later
/// dynamic solves.
FlowResult solve_static(SolverState& st, const BiCsrGraph& g, VertexId s, VertexId t,
                        const SolverParams& params = {});

}  // namespace dynflow

#pragma once

#include <vector>

#include "dynflow/static_solver.hpp"

namespace dynflow {

struct EdgeUpdate {
  VertexId from = 0;
  VertexId to = 0;
  Capacity new_cap = 0;

  friend bool operator==(const EdgeUpdate&, const EdgeUpdate&) = default;
};

struct UpdateBatch {
  std::vector<EdgeUpdate> updates;
};

// Throws InputError naming the offending update if an endpoint is out of
// range, the edge is not an original edge of g, the capacity is negative, or
// the same directed edge appears twice.
void validate_batch(const BiCsrGraph& g, const UpdateBatch& batch);

/// Re-weights the updated edges in `st` (cf shifted by new - old, cap set to
/// new), then cancels flow on any edge whose residual went negative by moving
/// the shortfall onto its reverse slot.
void apply_updates(SolverState& st, const BiCsrGraph& g, const UpdateBatch& batch);

/// excess[v] = inflow - outflow of the flow reconstructed from cap and cf.
void recompute_excess(SolverState& st, const BiCsrGraph& g);

/// Multi-source backward BFS from the sink and every deficient vertex; the
/// source is pinned at n.
void backward_bfs_dynamic(SolverState& st, const BiCsrGraph& g, WorkerPool& pool);
void backward_bfs_dynamic(SolverState& st, const BiCsrGraph& g);

/// Mirror of push_relabel_phase for deficient vertices. Heights are read as
/// pull heights (distance from the source or an overflowing vertex).
void pull_relabel_phase(SolverState& st, const BiCsrGraph& g, const Worklist& work, int kernel_cycles,
                        WorkerPool& pool, PhaseCounters* counters = nullptr);
void pull_relabel_phase(SolverState& st, const BiCsrGraph& g, const Worklist& work, int kernel_cycles);

/// Forward BFS giving pull heights: 0 at the source and overflowing vertices.
void forward_bfs_pull(SolverState& st, const BiCsrGraph& g, WorkerPool& pool);

/// Incremental recomputation from a terminated state. `st` is left terminated
/// for the updated capacities and can seed the next batch.
FlowResult solve_dynamic(SolverState& st, const BiCsrGraph& g, const UpdateBatch& batch,
                         const SolverParams& params = {});

/// Like solve_dynamic, but first saturates the previous min cut and runs a
/// push pipeline on its sink side concurrently with a pull pipeline on its
/// source side, then finishes with an ordinary push pass. Requires the
/// certificate of the previous solve (std::logic_error otherwise).
FlowResult solve_dynamic_pushpull(SolverState& st, const BiCsrGraph& g, const UpdateBatch& batch,
                                  const SolverParams& params = {});

// Capacities of `g` with the batch applied (batch must be valid), rebuilt as a
// fresh graph for from-scratch comparisons.
BiCsrGraph with_updates(const BiCsrGraph& g, const UpdateBatch& batch);

}  // namespace dynflow

#pragma once

// Phase kernels shared by every solver.
//
// Concurrency contract inside a phase: cf and excess entries change only
// through atomic read-modify-write; a vertex's height is written only by the
// worker processing that vertex (or by BFS, which runs as its own phase). An
// edge's residual capacity decreases only through its owning scan (u for a
// push on u->v, v for a pull on u->v), so a snapshot read bounds every
// subtraction and cf never drops below zero.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "dynflow/static_solver.hpp"

namespace dynflow::detail {

template <class T>
inline T load(T& x) {
  return std::atomic_ref<T>(x).load(std::memory_order_relaxed);
}
template <class T>
inline void store(T& x, T v) {
  std::atomic_ref<T>(x).store(v, std::memory_order_relaxed);
}
template <class T>
inline T fetch_add(T& x, T v) {
  return std::atomic_ref<T>(x).fetch_add(v, std::memory_order_relaxed);
}
template <class T>
inline T exchange(T& x, T v) {
  return std::atomic_ref<T>(x).exchange(v, std::memory_order_relaxed);
}

enum class Direction {
  kPush,  // overflowing vertices send flow downhill toward sink-like bases
  kPull,  // deficient vertices draw flow from source-like bases
};

// Subset of vertices a pipeline may read or write. An empty tag span admits all.
struct Region {
  std::span<const std::uint8_t> tag;
  std::uint8_t mine = 0;

  bool contains(VertexId v) const { return tag.empty() || tag[static_cast<std::size_t>(v)] == mine; }
};

// Per-entry record of which pipelines touched cf/excess entries.
struct Ownership {
  std::vector<std::uint8_t> cf;
  std::vector<std::uint8_t> excess;

  std::uint64_t conflicts(std::uint8_t both) const;
};

struct Env {
  SolverState& st;
  const BiCsrGraph& g;
  WorkerPool& pool;
  Region region;
  Ownership* owners = nullptr;
  std::uint8_t owner_bit = 0;

  void touch_cf(EdgeId i) const {
    if (owners) std::atomic_ref(owners->cf[static_cast<std::size_t>(i)]).fetch_or(owner_bit);
  }
  void touch_excess(VertexId v) const {
    if (owners) std::atomic_ref(owners->excess[static_cast<std::size_t>(v)]).fetch_or(owner_bit);
  }
};

struct Counters {
  std::atomic<std::uint64_t> pushes{0};
  std::atomic<std::uint64_t> relabels{0};
  std::atomic<std::uint64_t> repairs{0};

  std::uint64_t total() const { return pushes.load() + relabels.load() + repairs.load(); }
};

// Level-synchronous multi-source BFS. Heights of region vertices are reset to
// n, bases to 0; push direction follows reversed residual edges (distance to a
// base), pull direction follows residual edges (distance from a base).
// `pinned` is never discovered. Returns the number of levels expanded.
int relabel_bfs(const Env& env, Direction dir, std::span<const VertexId> bases, VertexId pinned);

// Bases of the global relabel: push -> sink plus deficient vertices;
// pull -> source plus overflowing vertices. Restricted to the region.
std::vector<VertexId> collect_bases(const Env& env, Direction dir);

// Vertices that still have work in `dir` (excess of the matching sign, height < n).
Worklist collect_active(const Env& env, Direction dir);

// All non-terminal vertices of the region, ascending.
Worklist region_vertices(const Env& env);

void push_phase(const Env& env, std::span<const VertexId> work, int kernel_cycles, Counters& c);
void pull_phase(const Env& env, std::span<const VertexId> work, int kernel_cycles, Counters& c);
void repair_phase(const Env& env, Direction dir, std::span<const VertexId> scope, Counters& c);

// Rounds of (relabel BFS -> [exit if nothing active] -> phase -> repair) until
// no vertex is active right after a relabel. Exit heights are exact BFS
// distances, so the caller can read the cut from them.
struct LoopConfig {
  Direction dir = Direction::kPush;
  int kernel_cycles = 1;
  Schedule schedule = Schedule::kDataDriven;
  std::uint64_t operation_limit = 0;
  const Observer* observer = nullptr;
};

struct LoopStats {
  std::uint64_t rounds = 0;
  double bfs_ms = 0;
  double phase_ms = 0;
  double repair_ms = 0;
};

LoopStats run_rounds(const Env& env, const LoopConfig& cfg, Counters& c);

// Flow value read off a terminated state: sum of excess at height 0.
Capacity height_zero_excess(const SolverState& st);

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

unsigned resolve_workers(const SolverParams& p);
int resolve_kernel_cycles(const SolverParams& p, const BiCsrGraph& g);
std::uint64_t resolve_limit(const SolverParams& p, const BiCsrGraph& g);

}  // namespace dynflow::detail

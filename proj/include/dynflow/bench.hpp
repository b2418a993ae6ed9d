#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynflow/dynamic_solver.hpp"
#include "dynflow/io.hpp"

namespace dynflow::bench {

enum class BatchKind { kIncremental, kDecremental, kMixed };

const char* to_string(BatchKind k);
// Accepts inc|incremental, dec|decremental, mixed.
std::optional<BatchKind> parse_kind(std::string_view s);

struct BatchSpec {
  double pct = 1;  // batch size is ceil(pct * |E| / 100)
  BatchKind kind = BatchKind::kIncremental;
  std::uint64_t seed = 1;
  // Sampling weight of edges leaving the source or entering the sink,
  // relative to 1 for every other edge.
  double bias = 1;
};

/// Samples distinct existing edges (weighted, without replacement) and assigns
/// new capacities: incremental draws from (old, 2*old + 10], decremental from
/// [0, old). Mixed makes the first half decremental. Edges with capacity 0 are
/// never decremented. When fewer eligible edges exist than requested the batch
/// is clamped and a warning goes to `warn` (if given).
UpdateBatch generate_batch(const EdgeListGraph& g, VertexId s, VertexId t, const BatchSpec& spec,
                           std::ostream* warn = nullptr);

/// Uniform random directed graph without self-loops, capacities in [1, max_cap].
EdgeListGraph random_graph(VertexId n, std::size_t m, Capacity max_cap, std::uint64_t seed);

struct Instance {
  EdgeListGraph graph;
  VertexId source = 0;
  VertexId sink = 1;
};

/// Random instance with n in [2, max_n], up to max_m edges and random
/// distinct terminals. Some edges are forced out of s and into t so most
/// instances carry non-zero flow.
Instance random_instance(std::uint64_t seed, VertexId max_n, std::size_t max_m, Capacity max_cap = 100);

struct BenchOptions {
  std::string instance = "graph";
  int repeats = 3;  // median of this many runs is reported
};

/// For every spec: one batch, then dynamic, push-pull and from-scratch static
/// solves of the updated graph. One record per (spec, mode); `verified` is
/// set only if all three agree and each terminated state passes its
/// certificate and invariant checks.
std::vector<io::ResultRecord> run_benchmark(const BiCsrGraph& g, VertexId s, VertexId t,
                                            const std::vector<BatchSpec>& specs, const SolverParams& params,
                                            const BenchOptions& options = {});

// Gnuplot data: one file per batch kind, x = pct, one column per mode (ms).
void write_plot_files(const std::vector<io::ResultRecord>& records, const std::string& dir, int repeats);

}  // namespace dynflow::bench

#include "dynflow/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <set>

#include "dynflow/oracle.hpp"

namespace dynflow::bench {

const char* to_string(BatchKind k) {
  switch (k) {
    case BatchKind::kIncremental: return "inc";
    case BatchKind::kDecremental: return "dec";
    case BatchKind::kMixed: return "mixed";
  }
  return "?";
}

std::optional<BatchKind> parse_kind(std::string_view s) {
  if (s == "inc" || s == "incremental") return BatchKind::kIncremental;
  if (s == "dec" || s == "decremental") return BatchKind::kDecremental;
  if (s == "mixed") return BatchKind::kMixed;
  return std::nullopt;
}

namespace {

Capacity raise(Capacity old, std::mt19937_64& rng) {
  return std::uniform_int_distribution<Capacity>(old + 1, 2 * old + 10)(rng);
}

Capacity lower(Capacity old, std::mt19937_64& rng) {
  return std::uniform_int_distribution<Capacity>(0, old - 1)(rng);
}

}  // namespace

UpdateBatch generate_batch(const EdgeListGraph& g, VertexId s, VertexId t, const BatchSpec& spec,
                           std::ostream* warn) {
  if (!(spec.pct > 0 && spec.pct <= 100)) throw InputError("batch pct must be in (0, 100]");
  if (!(spec.bias >= 1)) throw InputError("batch bias must be >= 1");
  const EdgeListGraph edges = normalize(g);

  const std::size_t total = edges.edges.size();
  std::size_t k = static_cast<std::size_t>(std::ceil(spec.pct * static_cast<double>(total) / 100.0 - 1e-9));
  k = std::min(k, total);

  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < total; ++i) {
    if (spec.kind == BatchKind::kDecremental && edges.edges[i].cap == 0) continue;
    pool.push_back(i);
  }
  if (k > pool.size()) {
    if (warn) {
      *warn << "warning: requested " << k << " updates but only " << pool.size()
            << " eligible edges; batch clamped\n";
    }
    k = pool.size();
  }

  // Weighted sampling without replacement: key = u^(1/w), keep the k largest.
  // log form, log(u) / w, preserves the order and avoids underflow.
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(pool.size());
  for (std::size_t i : pool) {
    const Edge& e = edges.edges[i];
    const double w = (e.from == s || e.to == t) ? spec.bias : 1.0;
    double u = unit(rng);
    while (u == 0.0) u = unit(rng);
    keyed.emplace_back(std::log(u) / w, i);
  }
  auto larger = [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); };
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k), keyed.end(), larger);

  UpdateBatch batch;
  batch.updates.reserve(k);
  std::size_t dec_quota = spec.kind == BatchKind::kMixed ? k / 2 : 0;
  for (std::size_t j = 0; j < k; ++j) {
    const Edge& e = edges.edges[keyed[j].second];
    Capacity cap = 0;
    switch (spec.kind) {
      case BatchKind::kIncremental: cap = raise(e.cap, rng); break;
      case BatchKind::kDecremental: cap = lower(e.cap, rng); break;
      case BatchKind::kMixed:
        if (dec_quota > 0 && e.cap > 0) {
          cap = lower(e.cap, rng);
          --dec_quota;
        } else {
          cap = raise(e.cap, rng);
        }
        break;
    }
    batch.updates.push_back({e.from, e.to, cap});
  }
  if (dec_quota > 0 && warn) *warn << "warning: mixed batch short of " << dec_quota << " decrements\n";
  return batch;
}

EdgeListGraph random_graph(VertexId n, std::size_t m, Capacity max_cap, std::uint64_t seed) {
  if (n < 2) throw InputError("random graph needs n >= 2");
  if (max_cap < 1) throw InputError("max capacity must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> vert(0, n - 1);
  std::uniform_int_distribution<Capacity> cap(1, max_cap);
  EdgeListGraph g{n, {}};
  g.edges.reserve(m);
  while (g.edges.size() < m) {
    const VertexId u = vert(rng);
    const VertexId v = vert(rng);
    if (u == v) continue;
    g.edges.push_back({u, v, cap(rng)});
  }
  return g;
}

Instance random_instance(std::uint64_t seed, VertexId max_n, std::size_t max_m, Capacity max_cap) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
  const VertexId n = std::uniform_int_distribution<VertexId>(2, std::max<VertexId>(2, max_n))(rng);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(0, max_m)(rng);
  Instance inst;
  inst.graph = random_graph(n, m, max_cap, rng());
  inst.source = std::uniform_int_distribution<VertexId>(0, n - 1)(rng);
  do {
    inst.sink = std::uniform_int_distribution<VertexId>(0, n - 1)(rng);
  } while (inst.sink == inst.source);

  std::uniform_int_distribution<VertexId> vert(0, n - 1);
  std::uniform_int_distribution<Capacity> cap(1, max_cap);
  const std::size_t extra = std::min<std::size_t>(m / 8, 8);
  for (std::size_t i = 0; i < extra; ++i) {
    const VertexId a = vert(rng);
    const VertexId b = vert(rng);
    if (a != inst.source) inst.graph.edges.push_back({inst.source, a, cap(rng)});
    if (b != inst.sink) inst.graph.edges.push_back({b, inst.sink, cap(rng)});
  }
  inst.graph = normalize(inst.graph);
  return inst;
}

namespace {

struct Timed {
  FlowResult result;
  bool ok = false;
};

bool certified(const SolverState& st, const BiCsrGraph& g, const FlowResult& r) {
  oracle::Report rep = oracle::check_state(st, g, false);
  rep.merge(oracle::verify_cut(r.certificate, g, st, r.flow_value));
  try {
    rep.merge(oracle::verify_preflow(oracle::construct_flow(st, g), g, st));
  } catch (const std::logic_error& e) {
    rep.add(e.what());
  }
  return rep.ok();
}

io::ResultRecord record(const std::string& instance, const char* mode, const BatchSpec& spec, const FlowResult& r) {
  io::ResultRecord rec;
  rec.instance = instance;
  rec.mode = mode;
  rec.batch_kind = to_string(spec.kind);
  rec.batch_pct = spec.pct;
  rec.flow_value = r.flow_value;
  rec.rounds = r.rounds;
  rec.setup_ms = r.phase_times.setup_ms;
  rec.bfs_ms = r.phase_times.bfs_ms;
  rec.push_ms = r.phase_times.push_ms;
  rec.repair_ms = r.phase_times.repair_ms;
  rec.pipelines_ms = r.phase_times.pipelines_ms;
  rec.total_ms = r.phase_times.total_ms;
  return rec;
}

// Runs `solve` `repeats` times; returns the run with the median total time.
template <class Solve>
Timed median_run(int repeats, Solve&& solve) {
  std::vector<Timed> runs;
  for (int i = 0; i < repeats; ++i) runs.push_back(solve());
  bool all_ok = true;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    all_ok = all_ok && runs[i].ok && runs[i].result.flow_value == runs[0].result.flow_value;
  }
  std::sort(runs.begin(), runs.end(), [](const Timed& a, const Timed& b) {
    return a.result.phase_times.total_ms < b.result.phase_times.total_ms;
  });
  Timed mid = runs[runs.size() / 2];
  mid.ok = all_ok;
  return mid;
}

}  // namespace

std::vector<io::ResultRecord> run_benchmark(const BiCsrGraph& g, VertexId s, VertexId t,
                                            const std::vector<BatchSpec>& specs, const SolverParams& params,
                                            const BenchOptions& options) {
  if (options.repeats < 1) throw InputError("repeats must be >= 1");
  SolverState base;
  solve_static(base, g, s, t, params);
  const EdgeListGraph edges = to_edge_list(g);

  std::vector<io::ResultRecord> out;
  for (const BatchSpec& spec : specs) {
    const UpdateBatch batch = generate_batch(edges, s, t, spec);
    const BiCsrGraph updated = with_updates(g, batch);

    const Timed dyn = median_run(options.repeats, [&] {
      SolverState st = base;
      Timed r{solve_dynamic(st, g, batch, params), false};
      r.ok = certified(st, g, r.result);
      return r;
    });
    const Timed pp = median_run(options.repeats, [&] {
      SolverState st = base;
      Timed r{solve_dynamic_pushpull(st, g, batch, params), false};
      r.ok = certified(st, g, r.result);
      return r;
    });
    const Timed fresh = median_run(options.repeats, [&] {
      SolverState st;
      Timed r{solve_static(st, updated, s, t, params), false};
      r.ok = certified(st, updated, r.result);
      return r;
    });

    const bool agree = dyn.result.flow_value == pp.result.flow_value &&
                       dyn.result.flow_value == fresh.result.flow_value;
    const bool verified = agree && dyn.ok && pp.ok && fresh.ok;
    for (auto [mode, run] : {std::pair{"dynamic", &dyn}, std::pair{"pushpull", &pp}, std::pair{"static", &fresh}}) {
      io::ResultRecord rec = record(options.instance, mode, spec, run->result);
      rec.verified = verified;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

void write_plot_files(const std::vector<io::ResultRecord>& records, const std::string& dir, int repeats) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  // kind -> pct -> mode -> ms
  std::map<std::string, std::map<double, std::map<std::string, double>>> table;
  std::set<std::string> modes;
  for (const auto& r : records) {
    table[r.batch_kind][r.batch_pct][r.mode] = r.total_ms;
    modes.insert(r.mode);
  }
  for (const auto& [kind, rows] : table) {
    std::ofstream out(fs::path(dir) / (kind + ".dat"));
    if (!out) throw std::runtime_error("cannot write plot file in " + dir);
    out << "# " << kind << " batches, total ms, median of " << repeats << " runs\n# pct";
    for (const auto& m : modes) out << ' ' << m;
    out << '\n';
    for (const auto& [pct, by_mode] : rows) {
      out << pct;
      for (const auto& m : modes) {
        const auto it = by_mode.find(m);
        if (it == by_mode.end()) {
          out << " NaN";
        } else {
          out << ' ' << it->second;
        }
      }
      out << '\n';
    }
  }
}

}  // namespace dynflow::bench

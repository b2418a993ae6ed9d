#include "dynflow/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "dynflow/bench.hpp"
#include "dynflow/dynamic_solver.hpp"
#include "dynflow/io.hpp"
#include "dynflow/oracle.hpp"

namespace dynflow {

namespace {

struct Globals {
  int kernel_cycles = 0;  // 0: graph default
  unsigned threads = 0;
  bool deterministic = false;
  bool topology_driven = false;

  SolverParams params() const {
    SolverParams p;
    if (kernel_cycles > 0) p.kernel_cycles = kernel_cycles;
    p.threads = threads;
    p.deterministic = deterministic;
    p.schedule = topology_driven ? Schedule::kTopologyDriven : Schedule::kDataDriven;
    return p;
  }
};

struct Loaded {
  io::GraphInstance inst;
  BiCsrGraph g;
};

Loaded load(const std::string& path) {
  Loaded l{io::parse_graph(path), {}};
  l.g = build_bicsr(l.inst.graph);
  return l;
}

// Writes to `fallback` when path is empty or "-".
template <class Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  fn(f);
}

oracle::Report certify(const SolverState& st, const BiCsrGraph& g, const FlowResult& r) {
  oracle::Report rep = oracle::check_state(st, g, false);
  rep.merge(oracle::verify_cut(r.certificate, g, st, r.flow_value));
  try {
    rep.merge(oracle::verify_preflow(oracle::construct_flow(st, g), g, st));
  } catch (const std::logic_error& e) {
    rep.add(e.what());
  }
  return rep;
}

void print_result(std::ostream& out, const char* label, const FlowResult& r) {
  const auto& t = r.phase_times;
  out << std::fixed << std::setprecision(3);
  out << label << ": flow " << r.flow_value << ", rounds " << r.rounds << ", pushes " << r.pushes << ", relabels "
      << r.relabels << ", repairs " << r.repairs << '\n';
  out << "  ms: total " << t.total_ms << ", setup " << t.setup_ms << ", bfs " << t.bfs_ms << ", push " << t.push_ms
      << ", repair " << t.repair_ms;
  if (t.pipelines_ms > 0) out << ", pipelines " << t.pipelines_ms;
  out << '\n';
}

bool report(std::ostream& out, const std::string& name, const oracle::Report& rep) {
  if (rep.ok()) {
    out << "PASS " << name << '\n';
    return true;
  }
  out << "FAIL " << name << ": " << rep.violations.front();
  if (rep.violations.size() > 1) out << " (+" << rep.violations.size() - 1 << " more)";
  out << '\n';
  return false;
}

oracle::Report expect_eq(Capacity got, Capacity want, const char* what) {
  oracle::Report rep;
  if (got != want) rep.add(std::string(what) + " " + std::to_string(got) + " != " + std::to_string(want));
  return rep;
}

int cmd_static(const Globals& gl, const std::string& path, std::ostream& out, std::ostream& err) {
  const Loaded l = load(path);
  SolverState st;
  const FlowResult r = solve_static(st, l.g, l.inst.source, l.inst.sink, gl.params());
  out << "flow " << r.flow_value << '\n';
  print_result(out, "static", r);
  const oracle::Report rep = certify(st, l.g, r);
  if (!rep.ok()) {
    for (const auto& v : rep.violations) err << "certificate: " << v << '\n';
    return kExitVerifyFailed;
  }
  out << "certificate ok: |A| " << r.certificate.partition_a.size() << ", |B| " << r.certificate.partition_b.size()
      << ", cut " << r.certificate.cut_capacity << '\n';
  return kExitOk;
}

int cmd_dynamic(const Globals& gl, const std::string& graph_path, const std::string& updates_path,
                const std::string& mode, std::ostream& out, std::ostream& err) {
  const Loaded l = load(graph_path);
  const UpdateBatch batch = io::parse_updates(updates_path, l.g);
  const SolverParams p = gl.params();

  SolverState st;
  const FlowResult prior = solve_static(st, l.g, l.inst.source, l.inst.sink, p);
  const FlowResult dyn =
      mode == "pushpull" ? solve_dynamic_pushpull(st, l.g, batch, p) : solve_dynamic(st, l.g, batch, p);
  const BiCsrGraph updated = with_updates(l.g, batch);
  SolverState fresh_st;
  const FlowResult fresh = solve_static(fresh_st, updated, l.inst.source, l.inst.sink, p);

  out << "prior flow " << prior.flow_value << '\n';
  out << "updates " << batch.updates.size() << '\n';
  out << "flow " << dyn.flow_value << '\n';
  print_result(out, mode == "pushpull" ? "dynamic (pushpull)" : "dynamic (push)", dyn);
  print_result(out, "static from scratch", fresh);
  if (dyn.phase_times.total_ms > 0) {
    out << "speedup " << std::setprecision(2) << fresh.phase_times.total_ms / dyn.phase_times.total_ms << "x\n";
  }

  oracle::Report rep = expect_eq(dyn.flow_value, fresh.flow_value, "dynamic flow vs static");
  rep.merge(certify(st, l.g, dyn));
  if (!rep.ok()) {
    for (const auto& v : rep.violations) err << "verify: " << v << '\n';
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_verify(const Globals& gl, const std::string& graph_path, const std::string& updates_path,
               std::ostream& out) {
  const Loaded l = load(graph_path);
  const SolverParams p = gl.params();
  const VertexId s = l.inst.source;
  const VertexId t = l.inst.sink;
  bool ok = true;

  SolverState st;
  const FlowResult r = solve_static(st, l.g, s, t, p);
  const Capacity reference = oracle::dinic_maxflow(l.inst.graph, s, t);
  out << "flow " << r.flow_value << '\n';
  ok &= report(out, "static flow equals Dinic", expect_eq(r.flow_value, reference, "flow"));
  if (l.g.n() <= 20) {
    ok &= report(out, "static flow equals enumerated min cut",
                 expect_eq(r.flow_value, oracle::brute_force_min_cut(l.inst.graph, s, t), "flow"));
  }
  ok &= report(out, "static certificate", certify(st, l.g, r));

  if (!updates_path.empty()) {
    const UpdateBatch batch = io::parse_updates(updates_path, l.g);
    const BiCsrGraph updated = with_updates(l.g, batch);
    const Capacity want = oracle::dinic_maxflow(to_edge_list(updated), s, t);
    out << "updated flow (Dinic) " << want << '\n';
    for (const bool pushpull : {false, true}) {
      SolverState copy = st;
      const FlowResult d = pushpull ? solve_dynamic_pushpull(copy, l.g, batch, p) : solve_dynamic(copy, l.g, batch, p);
      const std::string name = pushpull ? "pushpull" : "push";
      ok &= report(out, "dynamic " + name + " flow equals Dinic", expect_eq(d.flow_value, want, "flow"));
      ok &= report(out, "dynamic " + name + " certificate", certify(copy, l.g, d));
    }
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel push-relabel max flow with batch capacity updates", "dynflow"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals gl;
  app.add_option("--kernel-cycles", gl.kernel_cycles, "Push/relabel iterations per vertex per phase (0: |E|/|V|)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--threads", gl.threads, "Worker threads (0: hardware concurrency)");
  app.add_flag("--deterministic", gl.deterministic, "Single worker, vertex-id order");
  app.add_flag("--topology-driven", gl.topology_driven, "Visit every vertex each phase instead of a worklist");

  std::string graph_path;
  std::string updates_path;
  std::string output;

  auto* c_static = app.add_subcommand("static", "Solve max flow and check the min-cut certificate");
  c_static->add_option("graph", graph_path, "DIMACS max-flow file")->required();

  std::string mode = "push";
  auto* c_dynamic = app.add_subcommand("dynamic", "Solve, apply an update batch, re-solve incrementally");
  c_dynamic->add_option("graph", graph_path)->required();
  c_dynamic->add_option("updates", updates_path)->required();
  c_dynamic->add_option("--mode", mode)->check(CLI::IsMember({"push", "pushpull"}));

  bench::BatchSpec spec;
  std::string kind = "inc";
  auto* c_gen = app.add_subcommand("gen-updates", "Generate a random update batch");
  c_gen->add_option("graph", graph_path)->required();
  c_gen->add_option("--pct", spec.pct, "Batch size as a percentage of |E|")->required();
  c_gen->add_option("--kind", kind)->check(CLI::IsMember({"inc", "dec", "mixed"}));
  c_gen->add_option("--seed", spec.seed);
  c_gen->add_option("--bias", spec.bias, "Selection weight of source/sink edges");
  c_gen->add_option("-o,--output", output);

  auto* c_verify = app.add_subcommand("verify", "Check solver results against the oracles");
  c_verify->add_option("graph", graph_path)->required();
  c_verify->add_option("updates", updates_path);

  std::vector<double> pcts{1, 5, 10};
  std::vector<std::string> kinds{"inc", "dec", "mixed"};
  std::uint64_t seed = 1;
  double bias = 1;
  int repeats = 3;
  std::string csv_path;
  std::string plot_dir;
  std::string name;
  auto* c_bench = app.add_subcommand("bench", "Time dynamic, push-pull and from-scratch solves");
  c_bench->add_option("graph", graph_path)->required();
  c_bench->add_option("--pcts", pcts)->delimiter(',');
  c_bench->add_option("--kinds", kinds)->delimiter(',')->check(CLI::IsMember({"inc", "dec", "mixed"}));
  c_bench->add_option("--seed", seed);
  c_bench->add_option("--bias", bias);
  c_bench->add_option("--repeats", repeats)->check(CLI::PositiveNumber);
  c_bench->add_option("--csv", csv_path, "CSV output (default stdout)");
  c_bench->add_option("--plot-dir", plot_dir, "Directory for gnuplot data files");
  c_bench->add_option("--name", name, "Instance name in the CSV (default: file name)");

  VertexId conv_s = -1;
  VertexId conv_t = -1;
  bool one_indexed = false;
  Capacity default_cap = 1;
  auto* c_convert = app.add_subcommand("convert", "Whitespace edge list to DIMACS");
  c_convert->add_option("edges", graph_path)->required();
  c_convert->add_option("--source", conv_s)->required();
  c_convert->add_option("--sink", conv_t)->required();
  c_convert->add_flag("--one-indexed", one_indexed, "Input ids (and --source/--sink) start at 1");
  c_convert->add_option("--default-cap", default_cap);
  c_convert->add_option("-o,--output", output);

  VertexId gen_n = 100;
  std::size_t gen_m = 1000;
  Capacity max_cap = 100;
  auto* c_gengraph = app.add_subcommand("gen-graph", "Random DIMACS instance (source 1, sink n)");
  c_gengraph->add_option("--n", gen_n)->check(CLI::Range(2, 1 << 30));
  c_gengraph->add_option("--m", gen_m);
  c_gengraph->add_option("--seed", seed);
  c_gengraph->add_option("--max-cap", max_cap)->check(CLI::PositiveNumber);
  c_gengraph->add_option("-o,--output", output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_static) return cmd_static(gl, graph_path, out, err);
    if (*c_dynamic) return cmd_dynamic(gl, graph_path, updates_path, mode, out, err);
    if (*c_verify) return cmd_verify(gl, graph_path, updates_path, out);
    if (*c_gen) {
      const Loaded l = load(graph_path);
      spec.kind = *bench::parse_kind(kind);
      const UpdateBatch batch = bench::generate_batch(l.inst.graph, l.inst.source, l.inst.sink, spec, &err);
      emit(output, out, [&](std::ostream& o) { io::write_updates(o, batch); });
      return kExitOk;
    }
    if (*c_bench) {
      const Loaded l = load(graph_path);
      std::vector<bench::BatchSpec> specs;
      for (const auto& k : kinds) {
        for (double pct : pcts) specs.push_back({pct, *bench::parse_kind(k), seed, bias});
      }
      bench::BenchOptions opts;
      opts.repeats = repeats;
      opts.instance = name.empty() ? std::filesystem::path(graph_path).filename().string() : name;
      const auto records = bench::run_benchmark(l.g, l.inst.source, l.inst.sink, specs, gl.params(), opts);
      err << "# timings are the median of " << repeats << " runs\n";
      emit(csv_path, out, [&](std::ostream& o) { io::write_csv(o, records); });
      if (!plot_dir.empty()) bench::write_plot_files(records, plot_dir, repeats);
      const bool all = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.verified; });
      if (!all) err << "verification failed for at least one record\n";
      return all ? kExitOk : kExitVerifyFailed;
    }
    if (*c_convert) {
      std::ifstream in(graph_path);
      if (!in) throw ParseError(graph_path, 0, "cannot open file");
      io::GraphInstance inst;
      const EdgeListGraph raw = io::read_edge_list(in, one_indexed, default_cap, graph_path);
      const VertexId shift = one_indexed ? 1 : 0;
      inst.source = conv_s - shift;
      inst.sink = conv_t - shift;
      inst.graph = raw;
      inst.graph.n = std::max({raw.n, inst.source + 1, inst.sink + 1, VertexId{2}});
      inst.graph = normalize(inst.graph, &inst.stats);
      check_terminals(build_bicsr(inst.graph), inst.source, inst.sink);
      emit(output, out, [&](std::ostream& o) { io::write_graph(o, inst); });
      return kExitOk;
    }
    if (*c_gengraph) {
      io::GraphInstance inst;
      inst.graph = normalize(bench::random_graph(gen_n, gen_m, max_cap, seed));
      inst.source = 0;
      inst.sink = gen_n - 1;
      emit(output, out, [&](std::ostream& o) { io::write_graph(o, inst); });
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

}  // namespace dynflow

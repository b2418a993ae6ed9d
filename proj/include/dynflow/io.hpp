#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dynflow/dynamic_solver.hpp"
#include "dynflow/graph.hpp"

namespace dynflow::io {

struct GraphInstance {
  EdgeListGraph graph;  // normalized, 0-indexed
  VertexId source = 0;
  VertexId sink = 0;
  NormalizeStats stats;
};

// DIMACS max-flow: "c ..." comments, one "p max <n> <m>", one "n <id> s",
// one "n <id> t", then m lines "a <u> <v> <cap>". Ids are 1-indexed on disk.
GraphInstance read_graph(std::istream& in, const std::string& source_name = "<stream>");
GraphInstance parse_graph(const std::string& path);
void write_graph(std::ostream& out, const GraphInstance& inst);

// Lines "u <from> <to> <new_cap>" (1-indexed); blank lines and '#' comments
// are skipped. Each update is checked against g as it is read.
UpdateBatch read_updates(std::istream& in, const BiCsrGraph& g, const std::string& source_name = "<stream>");
UpdateBatch parse_updates(const std::string& path, const BiCsrGraph& g);
void write_updates(std::ostream& out, const UpdateBatch& batch);

// Whitespace edge list "<u> <v> [cap]" with '#'/'%' comments; missing
// capacities default to `default_cap`. Vertex count is max id + 1.
EdgeListGraph read_edge_list(std::istream& in, bool one_indexed, Capacity default_cap,
                             const std::string& source_name = "<stream>");

struct ResultRecord {
  std::string instance;
  std::string mode;
  std::string batch_kind;
  double batch_pct = 0;
  Capacity flow_value = 0;
  std::uint64_t rounds = 0;
  double setup_ms = 0;
  double bfs_ms = 0;
  double push_ms = 0;
  double repair_ms = 0;
  double pipelines_ms = 0;
  double total_ms = 0;
  bool verified = false;
};

const std::string& csv_header();
void write_csv_row(std::ostream& out, const ResultRecord& r);
void write_csv(std::ostream& out, const std::vector<ResultRecord>& records);

}  // namespace dynflow::io

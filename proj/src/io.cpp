#include "dynflow/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace dynflow::io {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class T>
T number(std::string_view tok, const std::string& src, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(src, line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

std::string fmt_ms(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

GraphInstance read_graph(std::istream& in, const std::string& src) {
  std::string raw;
  std::size_t line = 0;
  bool have_problem = false;
  std::int64_t n = 0;
  std::int64_t declared_arcs = 0;
  std::size_t header_line = 0;
  std::int64_t source = -1;
  std::int64_t sink = -1;
  EdgeListGraph g;

  auto vertex = [&](std::string_view tok) {
    const auto id = number<std::int64_t>(tok, src, line, "vertex id");
    if (id < 1 || id > n) throw ParseError(src, line, "vertex id " + std::string(tok) + " outside [1, " + std::to_string(n) + "]");
    return static_cast<VertexId>(id - 1);
  };

  while (std::getline(in, raw)) {
    ++line;
    const auto tok = split(raw);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_problem) throw ParseError(src, line, "second problem line");
      if (tok.size() != 4 || tok[1] != "max") throw ParseError(src, line, "expected 'p max <n> <m>'");
      n = number<std::int64_t>(tok[2], src, line, "vertex count");
      declared_arcs = number<std::int64_t>(tok[3], src, line, "arc count");
      if (n < 2 || n >= std::numeric_limits<VertexId>::max()) throw ParseError(src, line, "vertex count out of range");
      if (declared_arcs < 0) throw ParseError(src, line, "negative arc count");
      have_problem = true;
      header_line = line;
      g.n = static_cast<VertexId>(n);
      g.edges.reserve(static_cast<std::size_t>(declared_arcs));
      continue;
    }
    if (!have_problem) throw ParseError(src, line, "'" + std::string(tok[0]) + "' line before problem line");
    if (tok[0] == "n") {
      if (tok.size() != 3 || (tok[2] != "s" && tok[2] != "t")) throw ParseError(src, line, "expected 'n <id> s|t'");
      const VertexId v = vertex(tok[1]);
      auto& slot = tok[2] == "s" ? source : sink;
      if (slot >= 0) throw ParseError(src, line, "duplicate '" + std::string(tok[2]) + "' node line");
      slot = v;
    } else if (tok[0] == "a") {
      if (tok.size() != 4) throw ParseError(src, line, "expected 'a <u> <v> <cap>'");
      const VertexId u = vertex(tok[1]);
      const VertexId v = vertex(tok[2]);
      const auto cap = number<Capacity>(tok[3], src, line, "capacity");
      if (cap < 0) throw ParseError(src, line, "negative capacity");
      g.edges.push_back({u, v, cap});
    } else {
      throw ParseError(src, line, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_problem) throw ParseError(src, line, "missing problem line");
  if (source < 0) throw ParseError(src, line, "missing source node line");
  if (sink < 0) throw ParseError(src, line, "missing sink node line");
  if (source == sink) throw ParseError(src, line, "source and sink are the same vertex");
  if (static_cast<std::int64_t>(g.edges.size()) != declared_arcs) {
    throw ParseError(src, header_line, "header declares " + std::to_string(declared_arcs) + " arcs, found " +
                                           std::to_string(g.edges.size()));
  }

  GraphInstance inst;
  inst.graph = normalize(g, &inst.stats);
  inst.source = static_cast<VertexId>(source);
  inst.sink = static_cast<VertexId>(sink);
  return inst;
}

GraphInstance parse_graph(const std::string& path) {
  auto in = open(path);
  return read_graph(in, path);
}

void write_graph(std::ostream& out, const GraphInstance& inst) {
  out << "p max " << inst.graph.n << ' ' << inst.graph.edges.size() << '\n';
  out << "n " << inst.source + 1 << " s\n";
  out << "n " << inst.sink + 1 << " t\n";
  for (const Edge& e : inst.graph.edges) out << "a " << e.from + 1 << ' ' << e.to + 1 << ' ' << e.cap << '\n';
}

UpdateBatch read_updates(std::istream& in, const BiCsrGraph& g, const std::string& src) {
  UpdateBatch batch;
  std::set<std::pair<VertexId, VertexId>> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = split(raw);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok.size() != 4 || tok[0] != "u") throw ParseError(src, line, "expected 'u <from> <to> <new_cap>'");
    const auto from = number<std::int64_t>(tok[1], src, line, "vertex id");
    const auto to = number<std::int64_t>(tok[2], src, line, "vertex id");
    const auto cap = number<Capacity>(tok[3], src, line, "capacity");
    if (from < 1 || from > g.n() || to < 1 || to > g.n()) throw ParseError(src, line, "vertex id out of range");
    if (cap < 0) throw ParseError(src, line, "negative capacity");
    const EdgeUpdate u{static_cast<VertexId>(from - 1), static_cast<VertexId>(to - 1), cap};
    const auto slot = g.find_edge(u.from, u.to);
    const std::string name = std::string(tok[1]) + " -> " + std::string(tok[2]);
    if (!slot || !g.is_original(*slot)) throw ParseError(src, line, "no edge " + name + " in the graph");
    if (!seen.emplace(u.from, u.to).second) throw ParseError(src, line, "duplicate update for edge " + name);
    batch.updates.push_back(u);
  }
  return batch;
}

UpdateBatch parse_updates(const std::string& path, const BiCsrGraph& g) {
  auto in = open(path);
  return read_updates(in, g, path);
}

void write_updates(std::ostream& out, const UpdateBatch& batch) {
  for (const EdgeUpdate& u : batch.updates) out << "u " << u.from + 1 << ' ' << u.to + 1 << ' ' << u.new_cap << '\n';
}

EdgeListGraph read_edge_list(std::istream& in, bool one_indexed, Capacity default_cap, const std::string& src) {
  EdgeListGraph g;
  std::int64_t max_id = -1;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tok = split(raw);
    if (tok.empty() || tok[0].front() == '#' || tok[0].front() == '%') continue;
    if (tok.size() < 2 || tok.size() > 3) throw ParseError(src, line, "expected '<u> <v> [cap]'");
    auto u = number<std::int64_t>(tok[0], src, line, "vertex id");
    auto v = number<std::int64_t>(tok[1], src, line, "vertex id");
    if (one_indexed) {
      --u;
      --v;
    }
    if (u < 0 || v < 0 || u >= std::numeric_limits<VertexId>::max() - 1 || v >= std::numeric_limits<VertexId>::max() - 1) {
      throw ParseError(src, line, "vertex id out of range");
    }
    const Capacity cap = tok.size() == 3 ? number<Capacity>(tok[2], src, line, "capacity") : default_cap;
    if (cap < 0) throw ParseError(src, line, "negative capacity");
    max_id = std::max({max_id, u, v});
    g.edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), cap});
  }
  g.n = static_cast<VertexId>(max_id + 1);
  return g;
}

const std::string& csv_header() {
  static const std::string header =
      "instance,mode,batch_kind,batch_pct,flow_value,rounds,setup_ms,bfs_ms,push_ms,repair_ms,pipelines_ms,total_ms,"
      "verified";
  return header;
}

void write_csv_row(std::ostream& out, const ResultRecord& r) {
  std::ostringstream pct;
  pct << r.batch_pct;
  out << csv_field(r.instance) << ',' << csv_field(r.mode) << ',' << csv_field(r.batch_kind) << ',' << pct.str()
      << ',' << r.flow_value << ',' << r.rounds << ',' << fmt_ms(r.setup_ms) << ',' << fmt_ms(r.bfs_ms) << ','
      << fmt_ms(r.push_ms) << ',' << fmt_ms(r.repair_ms) << ',' << fmt_ms(r.pipelines_ms) << ','
      << fmt_ms(r.total_ms) << ',' << (r.verified ? "true" : "false") << '\n';
}

void write_csv(std::ostream& out, const std::vector<ResultRecord>& records) {
  out << csv_header() << '\n';
  for (const auto& r : records) write_csv_row(out, r);
}

}  // namespace dynflow::io

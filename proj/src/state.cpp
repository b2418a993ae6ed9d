#include "dynflow/state.hpp"

#include <string>

namespace dynflow {

void check_terminals(const BiCsrGraph& g, VertexId s, VertexId t) {
  if (s < 0 || s >= g.n()) throw InputError("source " + std::to_string(s) + " out of range");
  if (t < 0 || t >= g.n()) throw InputError("sink " + std::to_string(t) + " out of range");
  if (s == t) throw InputError("source and sink must differ");
}

SolverState init_residuals(const BiCsrGraph& g, VertexId s, VertexId t) {
  check_terminals(g, s, t);
  SolverState st;
  st.n = g.n();
  st.source = s;
  st.sink = t;
  st.cap.assign(g.cap0().begin(), g.cap0().end());
  st.cf = st.cap;
  st.excess.assign(static_cast<std::size_t>(g.n()), 0);
  st.height.assign(static_cast<std::size_t>(g.n()), 0);
  return st;
}

void saturate_source(SolverState& st, const BiCsrGraph& g) {
  const VertexId s = st.source;
  for (EdgeId i = g.begin(s); i < g.end(s); ++i) {
    auto& forward = st.cf[static_cast<std::size_t>(i)];
    if (forward <= 0) continue;
    const Capacity delta = forward;
    forward = 0;
    st.cf[static_cast<std::size_t>(g.reverse(i))] += delta;
    st.excess[static_cast<std::size_t>(g.head(i))] += delta;
    st.excess[static_cast<std::size_t>(s)] -= delta;
  }
  st.certificate.reset();
}

}  // namespace dynflow

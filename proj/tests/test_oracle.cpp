#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace dynflow;
using namespace dynflow::testing;

TEST(Dinic, SmallCases) {
  EXPECT_EQ(oracle::dinic_maxflow({2, {{0, 1, 7}}}, 0, 1), 7);
  EXPECT_EQ(oracle::dinic_maxflow(four_edges(), 0, 3), 5);
  EXPECT_EQ(oracle::dinic_maxflow({2, {}}, 0, 1), 0);
  EXPECT_THROW(oracle::dinic_maxflow(four_edges(), 2, 2), InputError);
}

TEST(Dinic, CompleteBipartiteMatching) {
  // s = 0, left 1..3, right 4..6, t = 7.
  EdgeListGraph g{8, {}};
  for (VertexId l = 1; l <= 3; ++l) {
    g.edges.push_back({0, l, 1});
    for (VertexId r = 4; r <= 6; ++r) g.edges.push_back({l, r, 1});
  }
  for (VertexId r = 4; r <= 6; ++r) g.edges.push_back({r, 7, 1});
  EXPECT_EQ(oracle::dinic_maxflow(g, 0, 7), 3);
  EXPECT_EQ(solve_static(build_bicsr(g), 0, 7).flow_value, 3);
}

TEST(Dinic, AgreesWithCutEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const VertexId n = std::uniform_int_distribution<VertexId>(2, 9)(rng);
    EdgeListGraph g{n, {}};
    const int m = std::uniform_int_distribution<int>(0, 12)(rng);
    std::uniform_int_distribution<VertexId> vert(0, n - 1);
    for (int i = 0; i < m; ++i) g.edges.push_back({vert(rng), vert(rng), std::uniform_int_distribution<Capacity>(0, 20)(rng)});
    const VertexId s = vert(rng);
    VertexId t = vert(rng);
    if (t == s) t = (s + 1) % n;
    EXPECT_EQ(oracle::dinic_maxflow(g, s, t), oracle::brute_force_min_cut(g, s, t)) << "trial " << trial;
  }
}

TEST(BruteForceMinCut, FourVertexExample) {
  EXPECT_EQ(oracle::brute_force_min_cut(four_edges(), 0, 3), 5);
  EXPECT_THROW(oracle::brute_force_min_cut({30, {}}, 0, 1), InputError);
}

TEST(ConstructFlow, Cases) {
  const BiCsrGraph g = build_bicsr({2, {{0, 1, 5}}});
  SolverState st = init_residuals(g, 0, 1);
  EXPECT_EQ(oracle::construct_flow(st, g).f, (std::vector<Capacity>{0, 0}));
  st.cf = {2, 3};
  EXPECT_EQ(oracle::construct_flow(st, g).f, (std::vector<Capacity>{3, 0}));
  st.cf = {2, 4};
  EXPECT_THROW(oracle::construct_flow(st, g), std::logic_error);
}

TEST(ConstructFlow, MutualPairFlowsOneWay) {
  const BiCsrGraph g = build_bicsr({2, {{0, 1, 4}, {1, 0, 1}}});
  SolverState st = init_residuals(g, 0, 1);
  saturate_source(st, g);
  const auto f = oracle::construct_flow(st, g).f;
  EXPECT_EQ(f[static_cast<std::size_t>(slot(g, 0, 1))], 4);
  EXPECT_EQ(f[static_cast<std::size_t>(slot(g, 1, 0))], 0);
}

TEST(VerifyPreflow, ZeroFlowAndSolvedStates) {
  const BiCsrGraph g = four();
  SolverState st = init_residuals(g, 0, 3);
  EXPECT_TRUE(oracle::verify_preflow(oracle::construct_flow(st, g), g, st).ok());
  solve_static(st, g, 0, 3);
  EXPECT_TRUE(oracle::verify_preflow(oracle::construct_flow(st, g), g, st).ok());
}

TEST(VerifyPreflow, CorruptionDetected) {
  const BiCsrGraph g = four();
  SolverState st;
  solve_static(st, g, 0, 3);
  SolverState bad = st;
  bad.cf[0] += 1;
  EXPECT_THROW(oracle::construct_flow(bad, g), std::logic_error);
  EXPECT_FALSE(oracle::check_state(bad, g, false).ok());
  bad = st;
  bad.excess[1] += 1;
  bad.excess[2] -= 1;
  EXPECT_FALSE(oracle::verify_preflow(oracle::construct_flow(bad, g), g, bad).ok());
}

TEST(VerifyCut, SingleEdge) {
  const BiCsrGraph g = build_bicsr({2, {{0, 1, 7}}});
  SolverState st;
  const FlowResult r = solve_static(st, g, 0, 1);
  EXPECT_TRUE(oracle::verify_cut(r.certificate, g, st, 7).ok());
  EXPECT_FALSE(oracle::verify_cut(r.certificate, g, st, 6).ok());
}

TEST(VerifyCut, MutationsFail) {
  const BiCsrGraph g = four();
  SolverState st;
  const FlowResult r = solve_static(st, g, 0, 3);
  ASSERT_TRUE(oracle::verify_cut(r.certificate, g, st, 5).ok());
  // Moving 2 to B yields {0, 1} | {2, 3}, another cut of capacity 5, so it is not a mutation.
  for (VertexId v : {0, 1, 3}) {
    CutCertificate c = r.certificate;
    c.in_a[static_cast<std::size_t>(v)] ^= 1;
    c.partition_a.clear();
    c.partition_b.clear();
    for (VertexId u = 0; u < 4; ++u) (c.in_a[static_cast<std::size_t>(u)] ? c.partition_a : c.partition_b).push_back(u);
    EXPECT_FALSE(oracle::verify_cut(c, g, st, 5).ok()) << "flipped " << v;
  }
}

TEST(ResidualDistances, ChainAndUnreachable) {
  const BiCsrGraph g = build_bicsr({5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}});
  const SolverState st = init_residuals(g, 0, 3);
  const auto d = oracle::residual_distances(st, g, {3});
  EXPECT_EQ(d.d, (std::vector<Height>{3, 2, 1, 0, 5}));
}

TEST(ResidualDistances, HeightsNeverExceedDistanceAtRoundBoundaries) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = bench::random_instance(seed, 100, 800);
    const BiCsrGraph g = build_bicsr(inst.graph);
    SolverParams p = deterministic();
    p.observer = [&](Boundary b, const SolverState& st) {
      if (b != Boundary::kAfterRelabel) return;
      const auto d = oracle::residual_distances(st, g, height_zero_bases(st));
      for (VertexId v = 0; v < st.n; ++v) {
        if (v == st.source) continue;
        EXPECT_LE(st.height[static_cast<std::size_t>(v)], d.d[static_cast<std::size_t>(v)]);
      }
    };
    solve_static(g, inst.source, inst.sink, p);
  }
}

TEST(CheckState, DetectsEachViolation) {
  const BiCsrGraph g = four();
  SolverState st = init_residuals(g, 0, 3);
  EXPECT_TRUE(oracle::check_state(st, g, true).ok());
  SolverState bad = st;
  bad.height[1] = 9;
  EXPECT_FALSE(oracle::check_state(bad, g, false).ok());
  bad = st;
  bad.excess[1] = 1;
  EXPECT_FALSE(oracle::check_state(bad, g, false).ok());
  bad = st;
  bad.height[1] = 3;
  EXPECT_TRUE(oracle::check_state(bad, g, false).ok());
  EXPECT_FALSE(oracle::check_state(bad, g, true).ok());
}

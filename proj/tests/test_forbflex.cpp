#include <gtest/gtest.h>

#include "support.hpp"

using namespace oddcolor;

namespace {

// u joined by threads of the given kinds to far anchors w_i; each w_i has
// three leaves; u gets extra leaves up to degree 3. Colors: phi(w_i) = cw, leaves (o, x, x), so odd(w_i) = {o}.
struct Spider {
  PlaneGraph g;
  Vertex u = 0;
  std::vector<Vertex> w;
  std::vector<std::vector<Vertex>> leaves;
  std::vector<Thread> threads;  // oriented from u, in input order
};

auto spider(const std::vector<int>& kinds) -> Spider {
  oracle::Builder B;
  Spider s;
  s.u = B.add();
  for (int k : kinds) {
    int w = B.add();
    B.path(s.u, w, k);
    s.w.push_back(w);
    s.leaves.emplace_back();
    for (int i = 0; i < 3; ++i) {
      s.leaves.back().push_back(B.add());
      B.edge(w, s.leaves.back().back());
    }
  }
  for (std::size_t i = kinds.size(); i < 3; ++i) B.edge(s.u, B.add());
  s.g = B.build();
  for (Vertex w : s.w)
    for (const Thread& t : s.g.threads_anchored_by(s.u))
      if (t.w == w) s.threads.push_back(t);
  EXPECT_EQ(s.threads.size(), kinds.size());
  return s;
}

auto paint(const Spider& s, Color cu, Color cw, Color o, Color x) -> PartialColoring {
  PartialColoring phi(s.g.vertex_count(), 4);
  if (cu) phi.set(s.u, cu);
  for (std::size_t i = 0; i < s.w.size(); ++i) {
    phi.set(s.w[i], cw);
    phi.set(s.leaves[i][0], o);
    phi.set(s.leaves[i][1], x);
    phi.set(s.leaves[i][2], x);
  }
  return phi;
}

auto interior_colors(const PartialColoring& p, const Thread& t) -> std::vector<Color> {
  std::vector<Color> out;
  for (Vertex v : t.interior) out.push_back(p[v]);
  return out;
}

// u with four 2-threads to anchors spaced evenly on a 16-cycle.
auto four_t2_host() -> std::pair<PlaneGraph, Vertex> {
  oracle::Builder B;
  std::vector<int> c(16);
  for (int& v : c) v = B.add();
  for (int i = 0; i < 16; ++i) B.edge(c[i], c[(i + 1) % 16]);
  int u = B.add();
  for (int i = 0; i < 16; i += 4) B.path(u, c[i], 2);
  return {B.build(), u};
}

}  // namespace

TEST(NeighborType, ScoresAndNames) {
  using T = NeighborType;
  EXPECT_EQ(score(T::t1), 1);
  EXPECT_EQ(score(T::t2), 0);
  EXPECT_EQ(score(T::t3), 0);
  EXPECT_EQ(score(T::t_good), 1);
  EXPECT_EQ(score(T::t_sbad), 1);
  EXPECT_EQ(score(T::t_bad), 1);
  EXPECT_EQ(score(T::t_worst), 0);
  EXPECT_EQ(score(T::t_even), 2);
  EXPECT_EQ(score(T::t_odd), 1);
  EXPECT_EQ(thread_kind(T::t3), 3);
  EXPECT_EQ(thread_kind(T::t_even), 0);
}

TEST(NeighborType, Theta) {
  auto t = oracle::theta();
  EXPECT_EQ(neighbor_type(t.g, t.a, t.t1[0]), NeighborType::t1);
  EXPECT_EQ(neighbor_type(t.g, t.a, t.t2[0]), NeighborType::t2);
  EXPECT_EQ(neighbor_type(t.g, t.a, t.t3[0]), NeighborType::t3);
  EXPECT_EQ(forb_number(t.g, t.a), 1);
  EXPECT_EQ(flex_number(t.g, t.a), 3);
  EXPECT_EQ(count_type(t.g, t.a, NeighborType::t3), 2);
  auto s = deletion_set(t.g, t.a);
  EXPECT_EQ(s.size(), 10u);
  EXPECT_FALSE(std::binary_search(s.begin(), s.end(), t.b));
}

TEST(NeighborType, Errors) {
  auto s = spider({1});
  try {
    neighbor_type(s.g, s.w[0], s.leaves[0][0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::untypeable);
  }
  EXPECT_FALSE(typeable(s.g, s.w[0]));
  try {
    neighbor_type(s.g, s.u, s.leaves[0][0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::precondition_failed);
  }
}

TEST(DeletionSet, WorstNeighbor) {
  // u is the 5-vertex next to a worst 3-vertex v; S[u] picks up v and its neighbors
  oracle::Builder B;
  int v = B.add(), h = B.add();
  auto p = B.path(v, h, 1), q2 = B.path(v, h, 1);
  B.edge(v, h);
  B.path(h, B.add(), 0);
  B.path(h, B.add(), 0);
  auto g = B.build();
  ASSERT_EQ(classify_vertex(g, v), VertexClass::worst3);
  auto s = deletion_set(g, h);
  for (Vertex x : {h, v, p[0], q2[0]}) EXPECT_TRUE(std::binary_search(s.begin(), s.end(), x)) << x;
}

TEST(Flexible, OneThread) {
  auto s = spider({1});
  const Thread& t = s.threads[0];
  EXPECT_TRUE(is_flexible(s.g, t, s.u, paint(s, 1, 2, 1, 3)));
  EXPECT_FALSE(is_flexible(s.g, t, s.u, paint(s, 3, 2, 1, 4)));
  auto [a, b] = two_extensions(s.g, t, s.u, paint(s, 1, 2, 1, 3));
  EXPECT_EQ(interior_colors(a, t), (std::vector<Color>{3}));
  EXPECT_EQ(interior_colors(b, t), (std::vector<Color>{4}));
  try {
    two_extensions(s.g, t, s.u, paint(s, 3, 2, 1, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_flexible);
  }
}

TEST(Flexible, TwoThread) {
  auto s = spider({2});
  const Thread& t = s.threads[0];
  EXPECT_TRUE(is_flexible(s.g, t, s.u, paint(s, 1, 2, 1, 3)));
  EXPECT_TRUE(is_flexible(s.g, t, s.u, paint(s, 2, 2, 1, 3)));
  EXPECT_FALSE(is_flexible(s.g, t, s.u, paint(s, 3, 2, 1, 4)));
  auto [a, b] = two_extensions(s.g, t, s.u, paint(s, 1, 2, 1, 3));
  EXPECT_EQ(interior_colors(a, t), (std::vector<Color>{3, 4}));
  EXPECT_EQ(interior_colors(b, t), (std::vector<Color>{4, 3}));
}

TEST(Flexible, ThreeThread) {
  auto s = spider({3});
  const Thread& t = s.threads[0];
  EXPECT_TRUE(is_flexible(s.g, t, s.u, paint(s, 4, 1, 2, 3)));
  EXPECT_FALSE(is_flexible(s.g, t, s.u, paint(s, 2, 1, 2, 3)));
  auto [a, b] = two_extensions(s.g, t, s.u, paint(s, 4, 1, 2, 3));
  EXPECT_EQ(interior_colors(a, t), (std::vector<Color>{1, 2, 3}));
  EXPECT_EQ(interior_colors(b, t), (std::vector<Color>{3, 2, 4}));
}

TEST(Flexible, Preconditions) {
  auto s = spider({2});
  try {
    is_flexible(s.g, s.threads[0], s.u, paint(s, 0, 2, 1, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::precondition_failed);
  }
  // far anchor sees 1,1,3,3: no odd color at all
  auto even = paint(s, 1, 2, 1, 3);
  even.set(s.leaves[0][1], 1);
  even.set(s.threads[0].back(), 3);
  EXPECT_THROW(is_flexible(s.g, s.threads[0], s.u, even), Error);
}

TEST(Flexible, ExtensionsMeetTheirContract) {
  // For every flexible configuration on a spider with one thread of each kind,
  // both extensions give odd colors on the interior and far anchor and differ
  // next to u.
  for (int kind = 1; kind <= 3; ++kind) {
    auto s = spider({kind});
    const Thread& t = s.threads[0];
    int seen = 0;
    for (Color cu = 1; cu <= 4; ++cu)
      for (Color cw = 1; cw <= 4; ++cw)
        for (Color o = 1; o <= 4; ++o)
          for (Color x = 1; x <= 4; ++x) {
            if (o == cw || x == cw || x == o) continue;
            auto phi = paint(s, cu, cw, o, x);
            if (kind == 1 && cu == cw) continue;
            if (!is_flexible(s.g, t, s.u, phi)) continue;
            auto [a, b] = two_extensions(s.g, t, s.u, phi);
            EXPECT_NE(a[t.front()], b[t.front()]);
            for (const auto* p : {&a, &b}) {
              std::vector<Vertex> check(t.interior);
              check.push_back(t.w);
              for (Vertex v : check) EXPECT_FALSE(odd_colors(s.g, *p, v).empty()) << kind << " at " << v;
              std::vector<Vertex> path{s.u};
              path.insert(path.end(), t.interior.begin(), t.interior.end());
              path.push_back(t.w);
              for (std::size_t i = 0; i + 1 < path.size(); ++i) EXPECT_NE((*p)[path[i]], (*p)[path[i + 1]]);
            }
            ++seen;
          }
    EXPECT_GT(seen, 0);
  }
}

TEST(FlexSet, Spiders) {
  auto s = spider({1, 2});
  EXPECT_EQ(flex_set(s.g, s.u, paint(s, 0, 2, 1, 3)), (ColorSet{1, 2}));
  auto r = spider({3});
  EXPECT_EQ(flex_set(r.g, r.u, paint(r, 0, 2, 1, 3)), (ColorSet{2, 3, 4}));
}

TEST(ForbSet, Spider) {
  // one 1-thread (far anchor color 3) and a direct 4-neighbor x colored 4
  // whose colored neighbors give odd(x) = {1}
  oracle::Builder B;
  int u = B.add(), w = B.add(), x = B.add();
  B.path(u, w, 1);
  B.edge(u, x);
  B.edge(u, B.add());
  std::vector<int> lx, lw;
  for (int i = 0; i < 3; ++i) {
    lx.push_back(B.add());
    B.edge(x, lx.back());
    lw.push_back(B.add());
    B.edge(w, lw.back());
  }
  auto g = B.build();
  PartialColoring phi(g.vertex_count(), 4);
  phi.set(w, 3);
  phi.set(x, 4);
  phi.set(lx[0], 1);
  phi.set(lx[1], 2);
  phi.set(lx[2], 2);
  EXPECT_EQ(forb_set(g, u, phi), (ColorSet{1, 3, 4}));
  phi.set(lx[1], 3);
  EXPECT_EQ(forb_set(g, u, phi), (ColorSet{1, 3, 4}));
  EXPECT_EQ(forb_set(g, u, phi, true), (ColorSet{3, 4}));
}

TEST(ForbSet, SingleEvenNeighbor) {
  oracle::Builder B;
  int u = B.add(), x = B.add();
  B.edge(u, x);
  B.edge(u, B.add());
  B.edge(u, B.add());
  std::vector<int> lx;
  for (int i = 0; i < 3; ++i) {
    lx.push_back(B.add());
    B.edge(x, lx.back());
  }
  auto g = B.build();
  PartialColoring phi(g.vertex_count(), 4);
  phi.set(x, 3);
  phi.set(lx[0], 1);
  phi.set(lx[1], 2);
  phi.set(lx[2], 2);
  EXPECT_EQ(forb_set(g, u, phi), (ColorSet{1, 3}));
}

TEST(Greedy, StuckWithoutThreads) {
  auto g = embed(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}});
  PartialColoring phi(4, 4);
  phi.set(1, 1);
  phi.set(2, 2);
  phi.set(3, 3);
  GreedyOptions o;
  o.check_girth = false;
  o.check_input = false;
  try {
    greedy_extend(g, 0, phi, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::stuck);
  }
}

TEST(Greedy, InputPreconditions) {
  auto [g, u] = four_t2_host();
  PartialColoring phi(g.vertex_count(), 4);
  EXPECT_THROW(greedy_extend(g, u, phi), Error);
  PartialColoring five(g.vertex_count(), 5);
  EXPECT_THROW(greedy_extend(g, u, five), Error);
}

TEST(Greedy, FourTwoThreadHost) {
  auto [g, u] = four_t2_host();
  auto S = deletion_set(g, u);
  EXPECT_EQ(S.size(), 9u);
  std::vector<char> keep(g.vertex_count(), 1);
  for (Vertex v : S) keep[v] = 0;
  auto sub = induced_subgraph(g, keep);
  auto base = solve_k(sub.graph, 4, Mode::odd);
  ASSERT_TRUE(base);
  PartialColoring phi(g.vertex_count(), 4);
  for (Vertex i = 0; i < sub.graph.vertex_count(); ++i) phi.set(sub.original[i], (*base)[i]);
  auto out = greedy_extend(g, u, phi);
  EXPECT_TRUE(out.is_total());
  EXPECT_TRUE(oracle::valid(oracle::adj_of(g), out.values(), Mode::odd));
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (keep[v]) EXPECT_EQ(out[v], phi[v]);
}

TEST(Greedy, RandomGirthTenInstances) {
  int run = 0;
  for (std::uint64_t s = 1; s <= 40 && run < 60; ++s) {
    auto g = oracle::small_generated(s * 7919, 10, 70, 7);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
      if (g.degree(u) < 3 || !typeable(g, u)) continue;
      auto S = deletion_set(g, u);
      std::vector<char> keep(g.vertex_count(), 1);
      for (Vertex v : S) keep[v] = 0;
      auto sub = induced_subgraph(g, keep);
      SolveOptions so;
      so.guard = 1000;
      auto base = solve_k(sub.graph, 4, Mode::odd, so);
      if (!base) continue;
      PartialColoring phi(g.vertex_count(), 4);
      for (Vertex i = 0; i < sub.graph.vertex_count(); ++i) phi.set(sub.original[i], (*base)[i]);
      if (flex_set(g, u, phi).size() <= forb_set(g, u, phi).size()) continue;
      auto out = greedy_extend(g, u, phi);
      EXPECT_TRUE(oracle::valid(oracle::adj_of(g), out.values(), Mode::odd));
      ++run;
    }
  }
  EXPECT_GT(run, 10);
}

TEST(Report, Fields) {
  auto t = oracle::theta();
  auto r = flex_report(t.g, t.a);
  EXPECT_EQ(r.forb, 1);
  EXPECT_EQ(r.flex, 3);
  EXPECT_EQ(r.scores.size(), 4u);
  EXPECT_FALSE(r.forb_colors);
}

TEST(Inequalities, CycleHasNone) { EXPECT_TRUE(inequality_check(oracle::cycle(10)).empty()); }

TEST(Inequalities, FourTwoThreads) {
  auto [g, u] = four_t2_host();
  EXPECT_EQ(forb_number(g, u), 0);
  EXPECT_EQ(flex_number(g, u), 2);
  std::set<std::string> kinds;
  for (const auto& h : inequality_check(g))
    if (h.witness == std::vector<Vertex>{u}) kinds.insert(h.kind);
  EXPECT_TRUE(kinds.count("flex_over_forb"));
  EXPECT_TRUE(kinds.count("thread_forb_low"));
}

TEST(Inequalities, AdjacentPair) {
  oracle::Builder B;
  int a = B.add(), b = B.add();
  B.edge(a, b);
  for (int i = 0; i < 3; ++i) B.path(a, b, 3);
  auto g = B.build();
  bool pair = false;
  for (const auto& h : inequality_check(g)) pair = pair || h.kind == "adjacent_pair";
  EXPECT_TRUE(pair);
}

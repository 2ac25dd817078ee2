#pragma once

// Brute-force oracles and fixture builders shared by the unit tests and the
// acceptance runner. Nothing here calls into the library's checkers.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "oddcolor/io.hpp"

namespace oracle {

using namespace oddcolor;
using Adj = std::vector<std::vector<int>>;

inline auto adj_of(const PlaneGraph& g) -> Adj {
  Adj a(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) a[v] = g.neighbors(v);
  return a;
}

// Total coloring check straight from the definitions.
inline auto valid(const Adj& a, const std::vector<int>& c, Mode mode) -> bool {
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (c[v] == 0) return false;
    std::map<int, int> m;
    for (int x : a[v]) {
      if (c[x] == c[v]) return false;
      ++m[c[x]];
    }
    if (a[v].empty()) continue;
    bool good = false;
    for (auto [col, k] : m) good = good || (mode == Mode::odd ? k % 2 == 1 : k == 1);
    if (!good) return false;
  }
  return true;
}

// Smallest k with a valid coloring, by plain enumeration of k^n assignments.
inline auto chi(const Adj& a, Mode mode, int max_k) -> std::optional<int> {
  const int n = static_cast<int>(a.size());
  for (int k = 1; k <= max_k; ++k) {
    std::vector<int> c(n, 1);
    for (;;) {
      if (valid(a, c, mode)) return k;
      int i = 0;
      while (i < n && c[i] == k) c[i++] = 1;
      if (i == n) break;
      ++c[i];
    }
  }
  return std::nullopt;
}

inline auto girth(const Adj& a) -> std::optional<int> {
  const int n = static_cast<int>(a.size());
  int best = 1 << 30;
  for (int s = 0; s < n; ++s) {
    std::vector<int> d(n, -1), par(n, -1);
    std::queue<int> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int x : a[v]) {
        if (d[x] < 0) {
          d[x] = d[v] + 1, par[x] = v, q.push(x);
        } else if (par[v] != x) {
          best = std::min(best, d[v] + d[x] + 1);
        }
      }
    }
  }
  if (best == 1 << 30) return std::nullopt;
  return best;
}

// Odd (or PCF) colorings of the subgraph induced by `keep`, written into a
// full-length vector (0 outside keep). Calls f for each; stop when f returns false.
inline void for_each_coloring(const Adj& a, const std::vector<char>& keep, int k, Mode mode,
                              const std::function<bool(const std::vector<int>&)>& f) {
  const int n = static_cast<int>(a.size());
  std::vector<int> order;
  for (int v = 0; v < n; ++v)
    if (keep[v]) order.push_back(v);
  std::vector<int> c(n, 0);
  auto ok_final = [&] {
    for (int v : order) {
      std::map<int, int> m;
      for (int x : a[v])
        if (keep[x]) ++m[c[x]];
      if (m.empty()) continue;
      bool good = false;
      for (auto [col, cnt] : m) good = good || (mode == Mode::odd ? cnt % 2 == 1 : cnt == 1);
      if (!good) return false;
    }
    return true;
  };
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == order.size()) {
      if (ok_final() && !f(c)) stop = true;
      return;
    }
    const int v = order[i];
    for (int col = 1; col <= k && !stop; ++col) {
      bool clash = false;
      for (int x : a[v]) clash = clash || (keep[x] && c[x] == col);
      if (clash) continue;
      c[v] = col;
      rec(i + 1);
      c[v] = 0;
    }
  };
  rec(0);
}

// Number of array factorizations of a cyclic degree walk, over every start
// and both orientations, by a direct grammar matcher (no shared code with the
// library parser).
inline auto count_array_readings(const std::vector<int>& w) -> int {
  const int n = static_cast<int>(w.size());
  auto big = [](int d) { return d >= 3; };
  auto fits = [&](const std::vector<int>& s, int i, int len) -> bool {
    // s[i] leads, s[i+1..i+len-1] are the array tail, s[(i+len)%n] is the next leader
    const int lead = s[i % n], next = s[(i + len) % n];
    if (!big(lead) || !big(next)) return false;
    for (int j = 1; j < len; ++j)
      if (s[(i + j) % n] != 2) return false;
    if (len == 1) return true;
    if (len == 2) return true;  // every 2-array is one of worst/bad/good
    return lead >= 4 && next >= 4;
  };
  int total = 0;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<int> s = w;
    if (dir) std::reverse(s.begin(), s.end());
    for (int start = 0; start < n; ++start) {
      // dp over positions covered from start
      std::vector<int> ways(n + 1, 0);
      ways[0] = 1;
      for (int i = 0; i < n; ++i) {
        if (!ways[i]) continue;
        for (int len = 1; len <= 4 && i + len <= n; ++len)
          if (fits(s, start + i, len)) ways[i + len] += ways[i];
      }
      total += ways[n];
    }
  }
  return total;
}

// ---- fixture builders ------------------------------------------------------

struct Builder {
  int n = 0;
  EdgeList edges;

  auto add() -> int { return n++; }
  void edge(int a, int b) { edges.emplace_back(a, b); }
  // Path a - (k new vertices) - b; returns the interior.
  auto path(int a, int b, int k) -> std::vector<int> {
    std::vector<int> in;
    int prev = a;
    for (int i = 0; i < k; ++i) {
      int x = add();
      in.push_back(x);
      edge(prev, x);
      prev = x;
    }
    edge(prev, b);
    return in;
  }
  auto build() const -> PlaneGraph { return embed(n, edges); }
};

inline auto cycle(int n) -> PlaneGraph {
  std::vector<std::vector<Vertex>> rot(n);
  for (int i = 0; i < n; ++i) rot[i] = {(i + 1) % n, (i + n - 1) % n};
  return PlaneGraph::from_rotation(rot);
}

// Two 4-vertices joined by threads of kinds 1, 2, 3, 3.
struct Theta {
  PlaneGraph g;
  int a = 0, b = 1;
  std::vector<int> t1, t2, t3;
};

inline auto theta() -> Theta {
  Builder B;
  Theta t;
  t.a = B.add();
  t.b = B.add();
  t.t1 = B.path(t.a, t.b, 1);
  t.t2 = B.path(t.a, t.b, 2);
  t.t3 = B.path(t.a, t.b, 3);
  B.path(t.a, t.b, 3);
  t.g = B.build();
  return t;
}

// v is a bad 2-vertex: 1-thread between the 4-vertex a and the bad 3-vertex c.
struct BadFixture {
  PlaneGraph g;
  int v = 0;
};

inline auto bad_fixture() -> BadFixture {
  Builder B;
  int a = B.add(), e = B.add(), c = B.add(), d = B.add();
  BadFixture f;
  f.v = B.path(a, c, 1)[0];
  B.edge(c, d);
  B.edge(c, e);
  B.edge(d, a);
  B.edge(d, e);
  B.path(a, e, 3);
  B.path(a, e, 3);
  f.g = B.build();
  return f;
}

// v is a worst 2-vertex between two bad 3-vertices.
inline auto worst_fixture() -> BadFixture {
  Builder B;
  int c1 = B.add(), c2 = B.add(), e1 = B.add(), e2 = B.add();
  BadFixture f;
  f.v = B.path(c1, c2, 1)[0];
  B.edge(c1, c2);
  B.edge(c1, e1);
  B.edge(c2, e2);
  B.edge(e1, e2);
  B.path(e1, e2, 3);
  B.path(e1, e2, 3);
  f.g = B.build();
  return f;
}

// A face whose walk is four 4-leaders, leader i followed by runs[i]
// 2-vertices. The rotation is written by hand: the cycle bounds an empty
// face, a hub sits outside, and two outside chords lift every leader to
// degree 4.
struct FaceFixture {
  PlaneGraph g;
  int face = -1;
};

inline auto face_fixture(const std::vector<int>& runs) -> FaceFixture {
  std::vector<int> cyc, lead;
  for (int i = 0; i < 4; ++i) {
    lead.push_back(static_cast<int>(cyc.size()));
    for (int j = 0; j <= runs[i]; ++j) cyc.push_back(static_cast<int>(cyc.size()));
  }
  const int m = static_cast<int>(cyc.size()), hub = m;
  std::vector<std::vector<Vertex>> rot(m + 1);
  for (int i = 0; i < m; ++i) rot[i] = {(i + 1) % m, (i + m - 1) % m};
  const int first = runs[0] > 0 && runs[2] > 0 ? 0 : 1;
  std::vector<int> chord_to(4, -1), chord_from(4, -1);
  for (int i = first; i < 4; i += 2) chord_to[i] = (i + 1) % 4, chord_from[(i + 1) % 4] = i;
  for (int i = 0; i < 4; ++i) {
    auto& r = rot[lead[i]];
    if (chord_from[i] >= 0) r.push_back(lead[chord_from[i]]);
    r.push_back(hub);
    if (chord_to[i] >= 0) r.push_back(lead[chord_to[i]]);
  }
  for (int i = 3; i >= 0; --i) rot[hub].push_back(lead[i]);
  FaceFixture f;
  f.g = PlaneGraph::from_rotation(rot);
  for (const Face& fc : f.g.faces())
    if (fc.length() == m && std::find(fc.walk.begin(), fc.walk.end(), hub) == fc.walk.end()) f.face = fc.id;
  return f;
}

// Wheel-like fixture for the sandwich bounds: u joined to anchors by threads
// (kind 0 = direct edge), anchors joined in a cycle whose edges may be
// subdivided.
inline auto hub_fixture(std::mt19937_64& rng, int max_vertices = 14) -> std::pair<PlaneGraph, Vertex> {
  for (;;) {
    Builder B;
    const int u = B.add();
    const int d = std::uniform_int_distribution<int>(3, 4)(rng);
    std::vector<int> w(d);
    for (int& x : w) x = B.add();
    for (int i = 0; i < d; ++i) B.path(u, w[i], std::uniform_int_distribution<int>(0, 3)(rng));
    for (int i = 0; i < d; ++i) B.path(w[i], w[(i + 1) % d], std::uniform_int_distribution<int>(0, 2)(rng) / 2);
    if (B.n > max_vertices) continue;
    PlaneGraph g = B.build();
    if (!typeable(g, u)) continue;
    return {g, u};
  }
}

inline auto to_partial(const std::vector<int>& c, int k = 4) -> PartialColoring {
  PartialColoring p(static_cast<int>(c.size()), k);
  for (std::size_t v = 0; v < c.size(); ++v)
    if (c[v]) p.set(static_cast<int>(v), c[v]);
  return p;
}

// Generated plane graph with a cycle, girth at least `girth` and at most
// `max_n` vertices.
inline auto small_generated(std::uint64_t seed, int girth, int max_n, int max_skeleton = 8) -> PlaneGraph {
  for (std::uint64_t s = seed;; s += 1'000'003) {
    std::mt19937_64 rng(s);
    GeneratorSpec spec;
    spec.seed = s;
    spec.girth = girth;
    spec.skeleton = std::uniform_int_distribution<int>(4, max_skeleton)(rng);
    spec.density = 0.25;
    auto out = generate(spec);
    if (out.girth && out.graph.vertex_count() <= max_n) return out.graph;
  }
}

}  // namespace oracle

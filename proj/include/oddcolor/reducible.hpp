#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arrays.hpp"
#include "coloring.hpp"
#include "forbflex.hpp"
#include "plane_graph.hpp"
#include "solver.hpp"

namespace oddcolor {

enum class Theorem { odd10, pcf11 };

inline auto to_string(Theorem t) -> std::string { return t == Theorem::odd10 ? "odd10" : "pcf11"; }

inline auto required_girth(Theorem t) -> int { return t == Theorem::odd10 ? 10 : 11; }

enum class Applies { odd10, pcf11, both };

inline auto to_string(Applies a) -> std::string {
  switch (a) {
    case Applies::odd10: return "odd10";
    case Applies::pcf11: return "pcf11";
    case Applies::both: return "both";
  }
  return "?";
}

struct ConfigurationHit {
  std::string kind;
  std::vector<Vertex> witness;
  int face = -1;
  Applies applies = Applies::both;
  std::string detail;
};

namespace detail {

inline auto thread_vertex_count(const PlaneGraph& g, Vertex v) -> int {
  std::set<Vertex> s;
  for (const Thread& t : g.threads_anchored_by(v)) s.insert(t.interior.begin(), t.interior.end());
  return static_cast<int>(s.size());
}

inline auto long_threads_anchored(const PlaneGraph& g, Vertex v) -> int {
  int c = 0;
  for (const Thread& t : g.threads_anchored_by(v)) c += t.kind >= 2;
  return c;
}

inline auto has_thread_neighbor(const PlaneGraph& g, Vertex v, int kind) -> bool {
  for (const Thread& t : g.threads_anchored_by(v))
    if (t.kind == kind) return true;
  return false;
}

inline auto count_thread_neighbors(const PlaneGraph& g, Vertex v, int kind) -> int {
  int c = 0;
  for (const Thread& t : g.threads_anchored_by(v)) c += t.kind == kind;
  return c;
}

inline auto big_neighbors(const PlaneGraph& g, Vertex v, int min_deg) -> int {
  int c = 0;
  for (Vertex x : g.neighbors(v)) c += g.degree(x) >= min_deg;
  return c;
}

// Paths v1..v5 with deg(v1) odd and v2, v4, v5 of degree 2.
inline void odd_path_hits(const PlaneGraph& g, std::vector<ConfigurationHit>& out) {
  for (Vertex v2 = 0; v2 < g.vertex_count(); ++v2) {
    if (g.degree(v2) != 2) continue;
    const auto& nb = g.neighbors(v2);
    for (int side = 0; side < 2; ++side) {
      Vertex v1 = nb[side], v3 = nb[1 - side];
      if (g.degree(v1) % 2 == 0) continue;
      for (Vertex v4 : g.neighbors(v3)) {
        if (v4 == v2 || v4 == v1 || g.degree(v4) != 2) continue;
        for (Vertex v5 : g.neighbors(v4)) {
          if (v5 == v3 || v5 == v1 || v5 == v2 || g.degree(v5) != 2) continue;
          out.push_back({"odd_path", {v1, v2, v3, v4, v5}, -1, Applies::odd10, "odd vertex next to a thread end"});
        }
      }
    }
  }
}

inline auto cyclic_match(const std::vector<int>& w, const std::vector<int>& pat, bool any_mid) -> bool {
  const int n = static_cast<int>(w.size());
  if (n != static_cast<int>(pat.size())) return false;
  for (int dir = 0; dir < 2; ++dir)
    for (int s = 0; s < n; ++s) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        int d = dir == 0 ? w[(s + i) % n] : w[((s - i) % n + n) % n];
        int p = pat[i];
        if (p == -1) ok = any_mid || d >= 2;
        else if (p == 2) ok = d == 2;
        else ok = d >= p;
      }
      if (ok) return true;
    }
  return false;
}

inline auto cyclic_equal(const std::vector<ArraySymbol>& s, const std::vector<ArraySymbol>& p) -> bool {
  const std::size_t n = s.size();
  if (n != p.size()) return false;
  for (std::size_t r = 0; r < n; ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = s[(r + i) % n] == p[i];
    if (ok) return true;
  }
  return false;
}

inline void face_hits(const PlaneGraph& g, std::vector<ConfigurationHit>& out) {
  using A = ArraySymbol;
  // 3+ 2 * 2 3+ 2 3+ 2 2 2; -1 marks the free position
  const std::vector<int> ten{3, 2, -1, 2, 3, 2, 3, 2, 2, 2};
  for (const Face& f : g.faces()) {
    const auto reps = parse_arrays(f.degree_walk);
    bool bad_pair = false, lonely_a4 = false, good_chain = false;
    for (const auto& rep : reps) {
      auto s = rep.symbols();
      const std::size_t n = s.size();
      for (std::size_t i = 0; i < n; ++i) {
        A a = s[i], b = s[(i + 1) % n];
        auto is_long = [](A x) { return x == A::a3 || x == A::a4; };
        if ((a == A::a2_bad && is_long(b)) || (is_long(a) && b == A::a2_bad)) bad_pair = true;
      }
      bool has4 = std::count(s.begin(), s.end(), A::a4) > 0;
      bool short_sym = std::any_of(s.begin(), s.end(), [](A x) {
        return x == A::a1 || x == A::a2_good || x == A::a2_bad || x == A::a2_worst;
      });
      if (has4 && !short_sym) lonely_a4 = true;
      if (cyclic_equal(s, {A::a4, A::a2_good, A::a2_good, A::a2_good}) || cyclic_equal(s, {A::a4, A::a4, A::a2_good}))
        good_chain = true;
    }
    if (bad_pair) out.push_back({"bad_next_to_long", {}, f.id, Applies::odd10, "a2b adjacent to a3 or a4"});
    if (lonely_a4) out.push_back({"a4_without_short", {}, f.id, Applies::odd10, "a4 with no a1 or a2"});
    if (good_chain) out.push_back({"a4_good_chain", {}, f.id, Applies::odd10, "a4 a2g a2g a2g or a4 a4 a2g"});
    if (f.length() == 10 && cyclic_match(f.degree_walk, ten, true))
      out.push_back({"ten_face_pattern", {}, f.id, Applies::odd10, "10-face closing a 3-thread"});
  }
}

}  // namespace detail

// Every structural configuration that cannot occur in a minimum counterexample
// of the chosen theorem, plus the forb/flex inequality violations for odd10.
inline auto detect_all(const PlaneGraph& g, Theorem th) -> std::vector<ConfigurationHit> {
  std::vector<ConfigurationHit> out;
  const Applies both = Applies::both;
  const Applies mine = th == Theorem::odd10 ? Applies::odd10 : Applies::pcf11;
  const int n = g.vertex_count();
  const auto str = [](int x) { return std::to_string(x); };

  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) == 1) out.push_back({"one_vertex", {v}, -1, both, "vertex of degree 1"});
  for (const Thread& t : g.threads())
    if (t.kind >= 4) {
      std::vector<Vertex> w{t.u};
      w.insert(w.end(), t.interior.begin(), t.interior.end());
      w.push_back(t.w);
      out.push_back({"long_thread", w, -1, both, str(t.kind) + "-thread"});
    }
  if (g.thread_scan().pure_cycle) {
    for (int c = 0; c < g.component_count(); ++c) {
      std::vector<Vertex> cyc;
      bool pure = true;
      for (Vertex v = 0; v < n; ++v)
        if (g.component_of(v) == c) {
          pure = pure && g.degree(v) == 2;
          cyc.push_back(v);
        }
      if (pure) out.push_back({"long_thread", cyc, -1, both, "cycle of 2-vertices"});
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) == 2 && is_cut_vertex(g, v)) out.push_back({"cut_2vertex", {v}, -1, both, "2-vertex is a cut vertex"});

  if (th == Theorem::odd10) {
    for (Vertex v = 0; v < n; ++v) {
      const int d = g.degree(v);
      if (d >= 3 && d % 2 == 1 && detail::long_threads_anchored(g, v) > 0)
        out.push_back({"odd_anchor", {v}, -1, mine, "odd vertex anchors a 2+-thread"});
      if (d >= 4) {
        const int cnt = detail::thread_vertex_count(g, v), cap = d % 2 ? d : 3 * d - 5;
        if (cnt > cap)
          out.push_back({"thread_overload", {v}, -1, mine, str(cnt) + " thread vertices > " + str(cap)});
      }
      if (d == 3) {
        bool even_big = false;
        for (Vertex x : g.neighbors(v)) even_big = even_big || (g.degree(x) >= 4 && g.degree(x) % 2 == 0);
        if (!even_big) out.push_back({"three_without_even", {v}, -1, mine, "3-vertex with no even 4+-neighbor"});
      }
    }
    detail::odd_path_hits(g, out);
    detail::face_hits(g, out);
    for (auto& h : inequality_check(g)) out.push_back({h.kind, h.witness, -1, mine, h.detail});
  } else {
    for (Vertex v = 0; v < n; ++v) {
      const int d = g.degree(v);
      if (d == 3 && detail::long_threads_anchored(g, v) > 0)
        out.push_back({"three_anchor", {v}, -1, mine, "3-vertex anchors a 2+-thread"});
      if (d == 4 && detail::has_thread_neighbor(g, v, 3)) {
        int cap = 1 + detail::big_neighbors(g, v, 3), have = detail::long_threads_anchored(g, v);
        if (have > cap) out.push_back({"four_overload", {v}, -1, mine, str(have) + " 2+-threads > " + str(cap)});
      }
      if (d == 5 && detail::has_thread_neighbor(g, v, 3)) {
        int cap = 4 + detail::big_neighbors(g, v, 3), have = detail::long_threads_anchored(g, v);
        if (have > cap) out.push_back({"five_overload", {v}, -1, mine, str(have) + " 2+-threads > " + str(cap)});
      }
      if (d == 4 && detail::count_thread_neighbors(g, v, 2) == 3 && detail::count_thread_neighbors(g, v, 1) == 1)
        out.push_back({"three_t2_one_t1", {v}, -1, mine, "4-vertex with t2,t2,t2,t1 neighbors"});
    }
  }
  return out;
}

struct TraceStep {
  std::string procedure;
  std::vector<Vertex> vertices;
};

struct PeelResult {
  PartialColoring coloring;
  std::vector<TraceStep> trace;
  bool used_fallback = false;
};

struct PeelOptions {
  bool allow_fallback = true;
  bool use_greedy = true;
  long long node_limit = 2'000'000;
};

namespace detail {

enum class PieceKind { single, thread, greedy };

struct Piece {
  PieceKind kind;
  std::vector<Vertex> vertices;  // ids in the input graph
  Vertex anchor = -1;            // u for greedy
};

inline auto pick_piece(const Subgraph& h, bool use_greedy) -> Piece {
  const PlaneGraph& g = h.graph;
  const int n = g.vertex_count();
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) <= 1) return {PieceKind::single, {h.original[v]}};
  for (const Thread& t : g.threads())
    if (t.kind == 2 || t.kind == 3) {
      Piece p{PieceKind::thread, {}};
      for (Vertex x : t.interior) p.vertices.push_back(h.original[x]);
      return p;
    }
  if (use_greedy)
    for (Vertex u = 0; u < n; ++u) {
      if (g.degree(u) < 3 || !typeable(g, u)) continue;
      if (flex_number(g, u) <= forb_number(g, u)) continue;
      Piece p{PieceKind::greedy, {}, h.original[u]};
      for (Vertex x : deletion_set(g, u)) p.vertices.push_back(h.original[x]);
      return p;
    }
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) == 2) return {PieceKind::single, {h.original[v]}};
  // No vertex of degree <= 2: peel the smallest degree.
  Vertex best = 0;
  for (Vertex v = 1; v < n; ++v)
    if (g.degree(v) < g.degree(best)) best = v;
  return {PieceKind::single, {h.original[best]}};
}

inline auto valid(const PlaneGraph& g, const PartialColoring& phi, Mode mode) -> bool {
  return mode == Mode::odd ? is_odd_coloring(g, phi).ok : is_pcf_coloring(g, phi).ok;
}

// Color a single vertex so that it and its neighbors keep a witness color.
inline auto color_single(const PlaneGraph& g, PartialColoring phi, Vertex v, Mode mode) -> std::optional<PartialColoring> {
  for (Color c = 1; c <= phi.palette_size(); ++c) {
    bool clash = false;
    for (Vertex x : g.neighbors(v)) clash = clash || (phi.has(x) && phi[x] == c);
    if (clash) continue;
    phi.set(v, c);
    if (valid(g, phi, mode)) return phi;
    phi.unset(v);
  }
  return std::nullopt;
}

}  // namespace detail

// Constructive coloring by repeated deletion of reducible pieces, extended back
// with the matching procedure; exact search repairs steps where no procedure
// applies.
inline auto peel_color(const PlaneGraph& g, Theorem th, PeelOptions opt = {}) -> PeelResult {
  const int need = required_girth(th);
  if (auto gi = girth(g); gi && *gi < need)
    throw Error(Errc::precondition_failed, "girth " + std::to_string(*gi) + " < " + std::to_string(need));
  const Mode mode = th == Theorem::odd10 ? Mode::odd : Mode::pcf;
  const int n = g.vertex_count();

  std::vector<char> alive(n, 1);
  std::vector<detail::Piece> stack;
  for (int left = n; left > 0;) {
    auto h = induced_subgraph(g, alive);
    auto p = detail::pick_piece(h, opt.use_greedy && mode == Mode::odd);
    for (Vertex v : p.vertices) alive[v] = 0;
    left -= static_cast<int>(p.vertices.size());
    stack.push_back(std::move(p));
  }

  PeelResult res;
  std::vector<Color> color(n, 0);
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const detail::Piece& p = *it;
    for (Vertex v : p.vertices) alive[v] = 1;
    auto h = induced_subgraph(g, alive);
    const PlaneGraph& hg = h.graph;
    PartialColoring phi(hg.vertex_count(), 4);
    for (int i = 0; i < hg.vertex_count(); ++i)
      if (color[h.original[i]]) phi.set(i, color[h.original[i]]);

    std::optional<PartialColoring> out;
    std::string proc;
    try {
      if (p.kind == detail::PieceKind::single) {
        out = detail::color_single(hg, phi, h.local[p.vertices[0]], mode);
        proc = "single";
      } else if (p.kind == detail::PieceKind::thread && mode == Mode::odd) {
        const Thread* t = hg.thread_at(h.local[p.vertices[0]]);
        if (t && (t->kind == 2 || t->kind == 3)) {
          out = t->kind == 2 ? extend_over_2thread(hg, phi, *t) : extend_over_3thread(hg, phi, *t);
          proc = t->kind == 2 ? "thread2" : "thread3";
        }
      } else if (p.kind == detail::PieceKind::greedy) {
        out = greedy_extend(hg, h.local[p.anchor], phi);
        proc = "greedy_extend";
      }
    } catch (const Error&) {
      out.reset();
    }
    if (out && !(out->is_total() && detail::valid(hg, *out, mode)))
      out.reset();

    if (!out) {
      if (!opt.allow_fallback)
        throw Error(Errc::incomplete, "no procedure applies to piece at vertex " + std::to_string(p.vertices[0]));
      res.used_fallback = true;
      // Local repair: release the piece and everything within distance 2.
      std::vector<char> release(hg.vertex_count(), 0);
      for (Vertex v : p.vertices) release[h.local[v]] = 1;
      for (int r = 0; r < 2; ++r) {
        auto cur = release;
        for (Vertex v = 0; v < hg.vertex_count(); ++v)
          if (cur[v])
            for (Vertex x : hg.neighbors(v)) release[x] = 1;
      }
      PartialColoring base = phi;
      std::vector<Vertex> released;
      for (Vertex v = 0; v < hg.vertex_count(); ++v)
        if (release[v]) base.unset(v), released.push_back(h.original[v]);
      try {
        out = complete(hg, base, mode, opt.node_limit);
        proc = "exact_local";
      } catch (const Error&) {
        out.reset();
      }
      if (!out) {
        try {
          out = complete(hg, PartialColoring(hg.vertex_count(), 4), mode, opt.node_limit);
        } catch (const Error&) {
          out.reset();
        }
        proc = "exact_global";
        released.clear();
        for (Vertex v = 0; v < hg.vertex_count(); ++v) released.push_back(h.original[v]);
      }
      if (!out) throw Error(Errc::incomplete, "exact repair failed at vertex " + std::to_string(p.vertices[0]));
      res.trace.push_back({proc, released});
    } else {
      res.trace.push_back({proc, p.vertices});
    }
    for (int i = 0; i < hg.vertex_count(); ++i) color[h.original[i]] = (*out)[i];
  }
  res.coloring = PartialColoring(n, 4);
  for (Vertex v = 0; v < n; ++v)
    if (color[v]) res.coloring.set(v, color[v]);
  return res;
}

}  // namespace oddcolor

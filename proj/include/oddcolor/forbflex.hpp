#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrays.hpp"
#include "coloring.hpp"
#include "plane_graph.hpp"

namespace oddcolor {

enum class NeighborType { t1, t2, t3, t_good, t_sbad, t_bad, t_worst, t_even, t_odd };

inline auto to_string(NeighborType t) -> std::string {
  switch (t) {
    case NeighborType::t1: return "t1";
    case NeighborType::t2: return "t2";
    case NeighborType::t3: return "t3";
    case NeighborType::t_good: return "t_good";
    case NeighborType::t_sbad: return "t_sbad";
    case NeighborType::t_bad: return "t_bad";
    case NeighborType::t_worst: return "t_worst";
    case NeighborType::t_even: return "t_even";
    case NeighborType::t_odd: return "t_odd";
  }
  return "?";
}

inline auto thread_kind(NeighborType t) -> int {
  switch (t) {
    case NeighborType::t1: return 1;
    case NeighborType::t2: return 2;
    case NeighborType::t3: return 3;
    default: return 0;
  }
}

inline auto neighbor_type(const PlaneGraph& g, Vertex u, Vertex v) -> NeighborType {
  if (!g.adjacent(u, v))
    throw Error(Errc::precondition_failed, std::to_string(u) + " and " + std::to_string(v) + " not adjacent");
  const int d = g.degree(v);
  auto fail = [&](const std::string& why) {
    return Error(Errc::untypeable, "neighbor " + std::to_string(v) + " of " + std::to_string(u) + ": " + why);
  };
  if (d <= 1) throw fail("1-vertex");
  if (d == 2) {
    const Thread* t = g.thread_at(v);
    if (!t) throw fail("2-vertex outside any thread");
    if (t->kind >= 4) throw fail(std::to_string(t->kind) + "-thread");
    return t->kind == 1 ? NeighborType::t1 : t->kind == 2 ? NeighborType::t2 : NeighborType::t3;
  }
  if (d == 3) {
    switch (classify_vertex(g, v)) {
      case VertexClass::good3: return NeighborType::t_good;
      case VertexClass::sbad3: return NeighborType::t_sbad;
      case VertexClass::bad3: return NeighborType::t_bad;
      case VertexClass::worst3: return NeighborType::t_worst;
      default: throw fail("3-vertex outside the 3-vertex classes");
    }
  }
  return d % 2 == 0 ? NeighborType::t_even : NeighborType::t_odd;
}

inline auto score(NeighborType t) -> int {
  switch (t) {
    case NeighborType::t2:
    case NeighborType::t3:
    case NeighborType::t_worst: return 0;
    case NeighborType::t_even: return 2;
    default: return 1;
  }
}

inline auto score(const PlaneGraph& g, Vertex u, Vertex v) -> int { return score(neighbor_type(g, u, v)); }

inline auto forb_number(const PlaneGraph& g, Vertex u) -> int {
  int s = 0;
  for (Vertex v : g.neighbors(u)) s += score(g, u, v);
  return s;
}

inline auto flex_number(const PlaneGraph& g, Vertex u) -> int {
  int k = 0;
  for (Vertex v : g.neighbors(u)) k = std::max(k, thread_kind(neighbor_type(g, u, v)));
  return k;
}

// True when every neighbor of u has a type.
inline auto typeable(const PlaneGraph& g, Vertex u) -> bool {
  try {
    for (Vertex v : g.neighbors(u)) (void)neighbor_type(g, u, v);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline auto count_type(const PlaneGraph& g, Vertex u, NeighborType t) -> int {
  int c = 0;
  for (Vertex v : g.neighbors(u)) c += neighbor_type(g, u, v) == t;
  return c;
}

// S[u], sorted.
inline auto deletion_set(const PlaneGraph& g, Vertex u) -> std::vector<Vertex> {
  std::set<Vertex> s{u};
  for (const Thread& t : g.threads_anchored_by(u)) s.insert(t.interior.begin(), t.interior.end());
  for (Vertex v : g.neighbors(u)) {
    if (g.degree(v) == 3 && classify_vertex(g, v) == VertexClass::worst3) {
      s.insert(v);
      for (Vertex x : g.neighbors(v)) s.insert(x);
    }
  }
  return {s.begin(), s.end()};
}

// Odd color of the far anchor that witnesses flexibility, if any. Throws
// PreconditionFailed when no odd color of w meets the definition's guards.
inline auto flex_witness(const PlaneGraph& g, const Thread& p_in, Vertex u, const PartialColoring& phi)
    -> std::optional<Color> {
  if (p_in.u != u && p_in.w != u) throw Error(Errc::precondition_failed, "u does not anchor the thread");
  const Thread p = p_in.oriented_from(u);
  if (p.kind < 1 || p.kind > 3) throw Error(Errc::precondition_failed, "thread kind outside 1..3");
  const Vertex w = p.w;
  if (w == u) throw Error(Errc::precondition_failed, "anchors coincide");
  if (!phi.has(u) || !phi.has(w)) throw Error(Errc::precondition_failed, "anchors must be colored");
  ColorSet odd = odd_colors(g, phi, w);
  if (phi.has(p.back())) odd.erase(phi[p.back()]);
  if (odd.empty())
    throw Error(Errc::precondition_failed, "far anchor " + std::to_string(w) + " has no usable odd color");
  for (Color c : odd.to_vector()) {
    bool ok = p.kind == 1 ? phi[u] == c : p.kind == 2 ? (phi[u] == phi[w] || phi[u] == c) : phi[u] != c;
    if (ok) return c;
  }
  return std::nullopt;
}

inline auto is_flexible(const PlaneGraph& g, const Thread& p, Vertex u, const PartialColoring& phi) -> bool {
  return flex_witness(g, p, u, phi).has_value();
}

namespace detail {

inline auto flexible_quiet(const PlaneGraph& g, const Thread& p, Vertex u, const PartialColoring& phi)
    -> std::optional<Color> {
  try {
    return flex_witness(g, p, u, phi);
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline auto anchors_flexible_thread(const PlaneGraph& g, Vertex x, const PartialColoring& phi) -> bool {
  if (!phi.has(x)) return false;
  for (const Thread& t : g.threads_anchored_by(x))
    if (flexible_quiet(g, t, x, phi)) return true;
  return false;
}

}  // namespace detail

// Colors for u that make some u-anchored thread flexible. Properness at u is
// not part of the condition; neighbor clashes are accounted for by forb_set.
inline auto flex_set(const PlaneGraph& g, Vertex u, const PartialColoring& phi) -> ColorSet {
  ColorSet out;
  PartialColoring trial = phi;
  const auto threads = g.threads_anchored_by(u);
  for (Color a = 1; a <= phi.palette_size(); ++a) {
    trial.set(u, a);
    for (const Thread& t : threads)
      if (detail::flexible_quiet(g, t, u, trial)) {
        out.insert(a);
        break;
      }
  }
  return out;
}

// With relaxed_even, an even neighbor with two or more odd colors contributes
// no odd color (one added neighbor color kills at most one of them).
inline auto forb_set(const PlaneGraph& g, Vertex u, const PartialColoring& phi, bool relaxed_even = false)
    -> ColorSet {
  ColorSet out;
  for (Vertex x : g.neighbors(u)) {
    if (phi.has(x)) out.insert(phi[x]);
    if (g.degree(x) % 2 == 0) {
      ColorSet odd = odd_colors(g, phi, x);
      if (!odd.empty() && !(relaxed_even && odd.size() >= 2) && !detail::anchors_flexible_thread(g, x, phi))
        out.insert(*odd.min());
    }
  }
  for (const Thread& t : g.threads_anchored_by(u))
    if (t.kind == 1 && t.w != u && phi.has(t.w)) out.insert(phi[t.w]);
  return out;
}

struct FlexReport {
  Vertex u = -1;
  std::vector<std::pair<Vertex, NeighborType>> types;
  std::vector<int> scores;
  int forb = 0;
  int flex = 0;
  std::optional<ColorSet> forb_colors;
  std::optional<ColorSet> flex_colors;
};

inline auto flex_report(const PlaneGraph& g, Vertex u, const PartialColoring* phi = nullptr) -> FlexReport {
  FlexReport r;
  r.u = u;
  for (Vertex v : g.neighbors(u)) {
    NeighborType t = neighbor_type(g, u, v);
    r.types.emplace_back(v, t);
    r.scores.push_back(score(t));
    r.forb += score(t);
    r.flex = std::max(r.flex, thread_kind(t));
  }
  if (phi) {
    PartialColoring off = *phi;
    off.unset(u);
    r.flex_colors = flex_set(g, u, off);
    r.forb_colors = forb_set(g, u, off);
  }
  return r;
}

// Two colorings of the thread interior that agree elsewhere, give every
// interior vertex and the far anchor an odd color, and differ next to u.
inline auto two_extensions(const PlaneGraph& g, const Thread& p_in, Vertex u, const PartialColoring& phi_in)
    -> std::pair<PartialColoring, PartialColoring> {
  detail::require_k4(phi_in);
  auto c = flex_witness(g, p_in, u, phi_in);
  if (!c) throw Error(Errc::not_flexible, "thread at " + std::to_string(p_in.front()));
  const Thread p = p_in.oriented_from(u);
  PartialColoring a = phi_in;
  for (Vertex x : p.interior) a.unset(x);
  PartialColoring b = a;
  const Color cu = phi_in[u], cw = phi_in[p.w], o = *c;
  if (p.kind <= 2) {
    auto free = (ColorSet::palette(4) - ColorSet{cu, cw, o}).to_vector();
    if (free.size() < 2) throw Error(Errc::not_flexible, "fewer than two free colors");
    if (p.kind == 1) {
      a.set(p.interior[0], free[0]);
      b.set(p.interior[0], free[1]);
    } else {
      a.set(p.interior[0], free[0]);
      a.set(p.interior[1], free[1]);
      b.set(p.interior[0], free[1]);
      b.set(p.interior[1], free[0]);
    }
  } else {
    auto ends = (ColorSet::palette(4) - ColorSet{cu, o}).to_vector();
    PartialColoring* out[2] = {&a, &b};
    for (int i = 0; i < 2; ++i) {
      Color v1 = ends[i];
      Color v3 = *detail::first_free(ColorSet{cw, o, v1}, 4);
      out[i]->set(p.interior[0], v1);
      out[i]->set(p.interior[1], o);
      out[i]->set(p.interior[2], v3);
    }
  }
  return {a, b};
}

struct GreedyOptions {
  bool check_girth = true;
  bool check_input = true;
};

namespace detail {

inline auto odd_or_zero(const PlaneGraph& g, const PartialColoring& phi, Vertex v) -> Color {
  return odd_colors(g, phi, v).min().value_or(0);
}

// Odd coloring of the subgraph induced by the colored vertices.
inline auto odd_on_domain(const PlaneGraph& g, const PartialColoring& phi) -> bool {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!phi.has(v)) continue;
    bool any = false;
    for (Vertex x : g.neighbors(v)) {
      if (!phi.has(x)) continue;
      any = true;
      if (phi[x] == phi[v]) return false;
    }
    if (any && odd_colors(g, phi, v).empty()) return false;
  }
  return true;
}

}  // namespace detail

// Extends an odd 4-coloring of g - S[u] to all of g when |Flex| > |Forb|.
inline auto greedy_extend(const PlaneGraph& g, Vertex u, const PartialColoring& phi0, GreedyOptions opt = {})
    -> PartialColoring {
  detail::require_k4(phi0);
  const auto S = deletion_set(g, u);
  if (opt.check_girth) {
    auto gi = girth(g);
    if (gi && *gi < 10) throw Error(Errc::precondition_failed, "girth " + std::to_string(*gi) + " < 10");
  }
  if (opt.check_input) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      bool in_s = std::binary_search(S.begin(), S.end(), v);
      if (in_s == phi0.has(v))
        throw Error(Errc::precondition_failed, "domain must be V - S[u]; mismatch at " + std::to_string(v));
    }
    if (!detail::odd_on_domain(g, phi0)) throw Error(Errc::precondition_failed, "input is not an odd coloring");
  }
  for (Vertex x : g.neighbors(u)) (void)neighbor_type(g, u, x);

  const ColorSet flex = flex_set(g, u, phi0), forb = forb_set(g, u, phi0);
  if (flex.size() <= forb.size())
    throw Error(Errc::stuck, "|Flex|=" + std::to_string(flex.size()) + " <= |Forb|=" + std::to_string(forb.size()));
  const Color alpha = *(flex - forb).min();

  PartialColoring phi = phi0;
  phi.set(u, alpha);
  const auto threads = g.threads_anchored_by(u);
  std::optional<Thread> flexible;
  std::vector<std::pair<Vertex, Color>> witness;  // endpoint -> odd color to respect at its far anchor
  for (const Thread& t : threads) {
    auto c = detail::flexible_quiet(g, t, u, phi);
    if (c) {
      witness.emplace_back(t.front(), *c);
      if (!flexible) flexible = t;
    }
  }
  if (!flexible) throw Error(Errc::stuck, "no flexible thread for alpha");
  auto odd_at = [&](const Thread& t, Vertex w) {
    for (auto [x, c] : witness)
      if (x == t.front()) return c;
    return detail::odd_or_zero(g, phi, w);
  };
  auto pick = [](ColorSet used) {
    auto c = detail::first_free(used, 4);
    if (!c) throw Error(Errc::precondition_failed, "no free color");
    return *c;
  };

  std::vector<Vertex> order;
  for (Vertex x : g.neighbors(u))
    if (x != flexible->front() && std::binary_search(S.begin(), S.end(), x)) order.push_back(x);
  std::sort(order.begin(), order.end());
  for (Vertex x : order) {
    NeighborType tx = neighbor_type(g, u, x);
    if (thread_kind(tx) > 0) {
      Thread t;
      for (const Thread& s : threads)
        if (s.front() == x) t = s;
      const Vertex w = t.w;
      if (!phi.has(w)) throw Error(Errc::precondition_failed, "far anchor " + std::to_string(w) + " uncolored");
      const Color cw = phi[w], ow = odd_at(t, w);
      if (t.kind == 1) {  // Rule 1
        phi.set(x, pick({alpha, cw, ow}));
      } else if (t.kind == 2) {  // Rule 2
        Vertex y = t.interior[1];
        phi.set(y, pick({alpha, cw, ow}));
        phi.set(x, pick({alpha, phi[y], cw}));
      } else {  // Rule 3, far to near
        Vertex y = t.interior[1], z = t.interior[2];
        phi.set(z, pick({cw, ow}));
        phi.set(y, pick({alpha, phi[z], cw}));
        phi.set(x, pick({alpha, phi[y], phi[z]}));
      }
    } else if (tx == NeighborType::t_worst) {  // Rule 4
      std::vector<Vertex> ys;
      for (Vertex y : g.neighbors(x))
        if (y != u) ys.push_back(y);
      std::vector<Vertex> ws;
      for (Vertex y : ys) {
        if (g.degree(y) != 2) throw Error(Errc::precondition_failed, "worst neighbor without two 2-neighbors");
        Vertex wy = g.neighbors(y)[0] == x ? g.neighbors(y)[1] : g.neighbors(y)[0];
        if (!phi.has(wy)) throw Error(Errc::precondition_failed, "vertex " + std::to_string(wy) + " uncolored");
        ws.push_back(wy);
      }
      phi.set(x, pick({alpha, phi[ws[0]], phi[ws[1]]}));
      for (int i = 0; i < 2; ++i)
        phi.set(ys[i], pick({phi[x], phi[ws[i]], detail::odd_or_zero(g, phi, ws[i])}));
    } else {
      throw Error(Errc::precondition_failed, "unexpected neighbor " + std::to_string(x) + " in S[u]");
    }
  }

  auto [e1, e2] = two_extensions(g, *flexible, u, phi);
  phi = !odd_colors(g, e1, u).empty() ? e1 : e2;
  if (odd_colors(g, phi, u).empty()) throw Error(Errc::precondition_failed, "u left without an odd color");

  for (Vertex x : g.neighbors(u)) {
    if (std::binary_search(S.begin(), S.end(), x) || !odd_colors(g, phi, x).empty()) continue;
    bool fixed = false;
    for (const Thread& t : g.threads_anchored_by(x)) {
      if (!detail::flexible_quiet(g, t, x, phi0)) continue;
      auto c = detail::flexible_quiet(g, t, x, phi);
      if (!c) continue;
      auto [r1, r2] = two_extensions(g, t, x, phi);
      phi = !odd_colors(g, r1, x).empty() ? r1 : r2;
      fixed = true;
      break;
    }
    if (!fixed) throw Error(Errc::precondition_failed, "neighbor " + std::to_string(x) + " lost its odd color");
  }

  auto check = is_odd_coloring(g, phi);
  if (!check.ok || !phi.is_total())
    throw Error(Errc::precondition_failed, "extension failed at vertex " + std::to_string(check.witness));
  return phi;
}

struct InequalityHit {
  std::string kind;
  std::vector<Vertex> witness;
  std::string detail;
};

namespace detail {

inline auto t3_count(const PlaneGraph& g, Vertex v) -> int { return count_type(g, v, NeighborType::t3); }

// Faces whose boundary reads a4 a4 a1 a1 in this cyclic order (the a1s adjacent).
inline auto a4a4a1a1_faces(const PlaneGraph& g) -> std::vector<int> {
  std::vector<int> out;
  using A = ArraySymbol;
  for (const Face& f : g.faces()) {
    if (f.length() != 10) continue;
    for (const auto& rep : parse_arrays(f.degree_walk)) {
      auto s = rep.symbols();
      if (s.size() != 4) continue;
      bool hit = false;
      for (int r = 0; r < 4 && !hit; ++r)
        hit = s[r] == A::a4 && s[(r + 1) % 4] == A::a4 && s[(r + 2) % 4] == A::a1 && s[(r + 3) % 4] == A::a1;
      if (hit) {
        out.push_back(f.id);
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

// Instances of the forb/flex inequality hypotheses whose conclusion fails.
// Vertices with an untypeable neighborhood are skipped.
inline auto inequality_check(const PlaneGraph& g) -> std::vector<InequalityHit> {
  std::vector<InequalityHit> hits;
  const int n = g.vertex_count();
  std::vector<int> forb(n, -1), flex(n, -1);
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) >= 3 && typeable(g, v)) {
      forb[v] = forb_number(g, v);
      flex[v] = flex_number(g, v);
    }
  auto ok = [&](Vertex v) { return forb[v] >= 0; };
  auto str = [](int a) { return std::to_string(a); };

  for (Vertex u = 0; u < n; ++u) {
    if (!ok(u)) continue;
    if (flex[u] > forb[u])
      hits.push_back({"flex_over_forb", {u}, "flex " + str(flex[u]) + " > forb " + str(forb[u])});
    for (int i = 1; i <= 3; ++i) {
      NeighborType t = i == 1 ? NeighborType::t1 : i == 2 ? NeighborType::t2 : NeighborType::t3;
      if (count_type(g, u, t) > 0 && forb[u] < i)
        hits.push_back({"thread_forb_low", {u}, "t" + str(i) + "-neighbor with forb " + str(forb[u])});
    }
  }
  auto big = [&](Vertex v) { return ok(v) && g.degree(v) >= 4 && flex[v] >= 1; };
  for (Vertex a = 0; a < n; ++a) {
    if (!big(a)) continue;
    for (Vertex b : g.neighbors(a)) {
      if (b <= a || !big(b)) continue;
      if (forb[a] + forb[b] < flex[a] + flex[b] + 2)
        hits.push_back({"adjacent_pair", {a, b},
                        "forb sum " + str(forb[a] + forb[b]) + " < " + str(flex[a] + flex[b] + 2)});
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!big(v)) continue;
    const auto& nb = g.neighbors(v);
    for (Vertex a : nb)
      for (Vertex b : nb) {
        if (b <= a || !big(a) || !big(b)) continue;
        int need = flex[a] + flex[v] + flex[b] + 4;
        if (forb[a] + forb[v] + forb[b] < need)
          hits.push_back({"three_path", {a, v, b}, "forb sum " + str(forb[a] + forb[v] + forb[b]) + " < " + str(need)});
      }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) != 3 || classify_vertex(g, v) != VertexClass::sbad3) continue;
    const auto& nb = g.neighbors(v);
    for (Vertex a : nb)
      for (Vertex b : nb) {
        if (b <= a || g.degree(a) != 4 || g.degree(b) != 4 || !ok(a) || !ok(b)) continue;
        if (detail::t3_count(g, a) == 0 || detail::t3_count(g, b) == 0) continue;
        bool holds = (forb[a] >= 3 && forb[b] >= 4) || (forb[a] >= 4 && forb[b] >= 3);
        if (!holds)
          hits.push_back({"semibad_between_fours", {a, v, b}, "forb " + str(forb[a]) + ", " + str(forb[b])});
      }
  }
  for (int fid : detail::a4a4a1a1_faces(g)) {
    const Face& f = g.faces()[fid];
    const int len = f.length();
    for (int i = 0; i < len; ++i) {
      Vertex b = f.walk[i];
      if (g.degree(b) != 3) continue;
      Vertex a = f.walk[(i + len - 1) % len], c = f.walk[(i + 1) % len];
      if (!ok(a) || !ok(c)) continue;
      if (forb[a] == 3 && forb[c] == 3 && (detail::t3_count(g, a) > 1 || detail::t3_count(g, c) > 1))
        hits.push_back({"poor_face_good3", {a, b, c}, "face " + str(fid)});
      if (classify_vertex(g, b) == VertexClass::sbad3 && forb[a] + forb[c] <= 7) {
        for (auto [x, y] : {std::pair{a, c}, std::pair{c, a}})
          if (forb[x] <= forb[y] && detail::t3_count(g, x) > 1)
            hits.push_back({"poor_face_semibad3", {x, b, y}, "face " + str(fid)});
      }
    }
  }
  return hits;
}

}  // namespace oddcolor

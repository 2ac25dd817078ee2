#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace oddcolor {

using Vertex = int;
using Dart = int;

struct Face {
  int id = 0;
  std::vector<Dart> boundary;
  std::vector<Vertex> walk;       // origin of each boundary dart
  std::vector<int> degree_walk;

  auto length() const -> int { return static_cast<int>(boundary.size()); }
};

// A maximal run of 2-vertices between two 3+-vertices. kind == interior.size(),
// which may exceed 3; detectors flag those.
struct Thread {
  int kind = 0;
  std::vector<Vertex> interior;
  Vertex u = -1;  // anchor next to interior.front()
  Vertex w = -1;  // anchor next to interior.back()

  auto front() const -> Vertex { return interior.front(); }
  auto back() const -> Vertex { return interior.back(); }
  auto contains(Vertex v) const -> bool {
    return std::find(interior.begin(), interior.end(), v) != interior.end();
  }
  // Orient so that `a` is the anchor next to interior.front().
  auto oriented_from(Vertex a) const -> Thread {
    if (u == a) return *this;
    Thread t = *this;
    std::reverse(t.interior.begin(), t.interior.end());
    std::swap(t.u, t.w);
    return t;
  }
};

struct ThreadScan {
  std::vector<Thread> threads;
  std::vector<int> thread_of;  // per vertex; -1 when not interior to a thread
  bool pure_cycle = false;     // some component is a bare cycle of 2-vertices
};

enum class VertexClass { unclassified, good2, bad2, worst2, good3, sbad3, bad3, worst3 };

inline auto to_string(VertexClass c) -> std::string {
  switch (c) {
    case VertexClass::good2: return "good2";
    case VertexClass::bad2: return "bad2";
    case VertexClass::worst2: return "worst2";
    case VertexClass::good3: return "good3";
    case VertexClass::sbad3: return "sbad3";
    case VertexClass::bad3: return "bad3";
    case VertexClass::worst3: return "worst3";
    case VertexClass::unclassified: break;
  }
  return "unclassified";
}

// Rotation-system embedding. Darts of vertex v are contiguous; rot_next walks
// them counterclockwise. Faces follow next = rot_next(twin(d)).
class PlaneGraph {
 public:
  PlaneGraph() = default;

  static auto from_rotation(const std::vector<std::vector<Vertex>>& rot) -> PlaneGraph {
    PlaneGraph g;
    const int n = static_cast<int>(rot.size());
    g.adj_ = rot;
    g.offset_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) {
      for (Vertex x : rot[v]) {
        if (x < 0 || x >= n)
          throw Error(Errc::malformed_rotation,
                      "vertex " + std::to_string(v) + " lists unknown id " + std::to_string(x));
        if (x == v) throw Error(Errc::not_simple, "loop at " + std::to_string(v));
      }
      auto sorted = rot[v];
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::not_simple, "parallel edge at " + std::to_string(v));
      g.offset_[v + 1] = g.offset_[v] + static_cast<int>(rot[v].size());
    }
    const int m2 = g.offset_[n];
    g.origin_.resize(m2);
    g.target_.resize(m2);
    g.twin_.assign(m2, -1);
    g.lookup_.assign(n, {});
    for (int v = 0; v < n; ++v) {
      for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) {
        Dart d = g.offset_[v] + i;
        g.origin_[d] = v;
        g.target_[d] = rot[v][i];
        g.lookup_[v].emplace_back(rot[v][i], d);
      }
      std::sort(g.lookup_[v].begin(), g.lookup_[v].end());
    }
    for (Dart d = 0; d < m2; ++d) {
      auto t = g.find_dart(g.target_[d], g.origin_[d]);
      if (!t)
        throw Error(Errc::malformed_rotation, std::to_string(g.origin_[d]) + " lists " +
                                                  std::to_string(g.target_[d]) + " but not vice versa");
      g.twin_[d] = *t;
    }
    g.trace_faces();
    g.check_euler();
    g.scan_threads();
    return g;
  }

  auto vertex_count() const -> int { return static_cast<int>(adj_.size()); }
  auto edge_count() const -> int { return dart_count() / 2; }
  auto dart_count() const -> int { return static_cast<int>(origin_.size()); }
  auto degree(Vertex v) const -> int { return static_cast<int>(adj_[v].size()); }
  auto neighbors(Vertex v) const -> const std::vector<Vertex>& { return adj_[v]; }
  auto rotation() const -> const std::vector<std::vector<Vertex>>& { return adj_; }

  auto origin(Dart d) const -> Vertex { return origin_[d]; }
  auto target(Dart d) const -> Vertex { return target_[d]; }
  auto twin(Dart d) const -> Dart { return twin_[d]; }
  auto rot_next(Dart d) const -> Dart {
    Vertex v = origin_[d];
    int k = offset_[v + 1] - offset_[v];
    return offset_[v] + (d - offset_[v] + 1) % k;
  }
  auto face_next(Dart d) const -> Dart { return rot_next(twin_[d]); }

  auto find_dart(Vertex from, Vertex to) const -> std::optional<Dart> {
    const auto& l = lookup_[from];
    auto it = std::lower_bound(l.begin(), l.end(), std::make_pair(to, -1));
    if (it == l.end() || it->first != to) return std::nullopt;
    return it->second;
  }
  auto adjacent(Vertex a, Vertex b) const -> bool { return find_dart(a, b).has_value(); }

  auto faces() const -> const std::vector<Face>& { return faces_; }
  auto face_of(Dart d) const -> int { return face_of_[d]; }

  // Distinct faces incident to v, ascending.
  auto faces_at(Vertex v) const -> std::vector<int> {
    std::vector<int> out;
    for (Dart d = offset_[v]; d < offset_[v + 1]; ++d) out.push_back(face_of_[d]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  auto component_of(Vertex v) const -> int { return comp_[v]; }
  auto component_count() const -> int { return comp_count_; }
  auto connected() const -> bool { return comp_count_ <= 1; }

  auto thread_scan() const -> const ThreadScan& { return scan_; }
  auto threads() const -> const std::vector<Thread>& { return scan_.threads; }
  // Thread whose interior contains v, if any.
  auto thread_at(Vertex v) const -> const Thread* {
    int i = scan_.thread_of[v];
    return i < 0 ? nullptr : &scan_.threads[i];
  }
  // Threads anchored by a, each oriented away from a. A thread with both
  // anchors equal to a appears once per end.
  auto threads_anchored_by(Vertex a) const -> std::vector<Thread> {
    std::vector<Thread> out;
    for (Vertex x : adj_[a]) {
      const Thread* t = thread_at(x);
      if (!t) continue;
      if (t->u == a && t->front() == x) out.push_back(*t);
      else if (t->w == a && t->back() == x) out.push_back(reversed(*t));
    }
    return out;
  }

  friend auto operator==(const PlaneGraph& a, const PlaneGraph& b) -> bool { return a.adj_ == b.adj_; }

 private:
  static auto reversed(const Thread& t) -> Thread {
    Thread r = t;
    std::reverse(r.interior.begin(), r.interior.end());
    std::swap(r.u, r.w);
    return r;
  }

  void trace_faces() {
    face_of_.assign(dart_count(), -1);
    for (Dart s = 0; s < dart_count(); ++s) {
      if (face_of_[s] >= 0) continue;
      Face f;
      f.id = static_cast<int>(faces_.size());
      Dart d = s;
      do {
        face_of_[d] = f.id;
        f.boundary.push_back(d);
        f.walk.push_back(origin_[d]);
        f.degree_walk.push_back(degree(origin_[d]));
        d = face_next(d);
      } while (d != s);
      faces_.push_back(std::move(f));
    }
  }

  void check_euler() {
    const int n = vertex_count();
    comp_.assign(n, -1);
    comp_count_ = 0;
    for (Vertex s = 0; s < n; ++s) {
      if (comp_[s] >= 0) continue;
      std::queue<Vertex> q;
      q.push(s);
      comp_[s] = comp_count_;
      while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex x : adj_[v])
          if (comp_[x] < 0) comp_[x] = comp_count_, q.push(x);
      }
      ++comp_count_;
    }
    // V - E + F per component; isolated vertices carry no darts and are skipped.
    std::vector<long> chi(comp_count_, 0);
    std::vector<bool> has_edge(comp_count_, false);
    for (Vertex v = 0; v < n; ++v) {
      chi[comp_[v]] += 1;
      if (degree(v) > 0) has_edge[comp_[v]] = true;
    }
    for (Dart d = 0; d < dart_count(); ++d)
      if (d < twin_[d]) chi[comp_[origin_[d]]] -= 1;
    for (const Face& f : faces_) chi[comp_[f.walk.front()]] += 1;
    for (int c = 0; c < comp_count_; ++c) {
      if (has_edge[c] && chi[c] != 2)
        throw Error(Errc::not_planar_embedding,
                    "Euler characteristic " + std::to_string(chi[c]) + " in component " + std::to_string(c));
    }
  }

  void scan_threads() {
    const int n = vertex_count();
    scan_.thread_of.assign(n, -1);
    for (Vertex a = 0; a < n; ++a) {
      if (degree(a) < 3) continue;
      for (Vertex x : adj_[a]) {
        if (degree(x) != 2 || scan_.thread_of[x] >= 0) continue;
        Thread t;
        t.u = a;
        Vertex prev = a, cur = x;
        while (degree(cur) == 2) {
          t.interior.push_back(cur);
          Vertex nxt = adj_[cur][0] == prev ? adj_[cur][1] : adj_[cur][0];
          prev = cur;
          cur = nxt;
          if (cur == x) break;  // cannot happen with a 3+ start, kept as a guard
        }
        if (degree(cur) < 3) continue;  // run ends at a 1-vertex
        t.w = cur;
        t.kind = static_cast<int>(t.interior.size());
        int id = static_cast<int>(scan_.threads.size());
        for (Vertex v : t.interior) scan_.thread_of[v] = id;
        scan_.threads.push_back(std::move(t));
      }
    }
    std::vector<bool> all_two(comp_count_, true);
    for (Vertex v = 0; v < n; ++v)
      if (degree(v) != 2) all_two[comp_[v]] = false;
    for (int c = 0; c < comp_count_; ++c)
      if (all_two[c]) scan_.pure_cycle = true;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<int> offset_;
  std::vector<Vertex> origin_, target_;
  std::vector<Dart> twin_;
  std::vector<std::vector<std::pair<Vertex, Dart>>> lookup_;
  std::vector<Face> faces_;
  std::vector<int> face_of_;
  std::vector<int> comp_;
  int comp_count_ = 0;
  ThreadScan scan_;
};

inline auto build_from_rotation(const std::vector<std::vector<Vertex>>& rot) -> PlaneGraph {
  return PlaneGraph::from_rotation(rot);
}

struct Subgraph {
  PlaneGraph graph;
  std::vector<Vertex> original;  // new id -> id in the parent
  std::vector<Vertex> local;     // parent id -> new id, or -1
};

// Subgraph induced by the vertices with keep[v] set; the embedding is the
// restriction of the parent's rotation system.
inline auto induced_subgraph(const PlaneGraph& g, const std::vector<char>& keep) -> Subgraph {
  Subgraph s;
  s.local.assign(g.vertex_count(), -1);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (keep[v]) {
      s.local[v] = static_cast<Vertex>(s.original.size());
      s.original.push_back(v);
    }
  std::vector<std::vector<Vertex>> rot(s.original.size());
  for (std::size_t i = 0; i < s.original.size(); ++i)
    for (Vertex x : g.neighbors(s.original[i]))
      if (keep[x]) rot[i].push_back(s.local[x]);
  s.graph = PlaneGraph::from_rotation(rot);
  return s;
}

// Shortest cycle length, or nullopt for forests.
inline auto girth(const PlaneGraph& g) -> std::optional<int> {
  const int n = g.vertex_count();
  int best = -1;
  std::vector<int> dist(n), par(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    par[s] = -1;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      if (best >= 0 && 2 * dist[v] + 1 >= best) break;
      for (Vertex x : g.neighbors(v)) {
        if (dist[x] < 0) {
          dist[x] = dist[v] + 1;
          par[x] = v;
          q.push(x);
        } else if (par[v] != x) {
          int len = dist[v] + dist[x] + 1;
          if (best < 0 || len < best) best = len;
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

inline auto classify_vertex(const PlaneGraph& g, Vertex v) -> VertexClass {
  const int d = g.degree(v);
  if (d == 2) {
    const Thread* t = g.thread_at(v);
    if (!t || t->kind != 1) return VertexClass::unclassified;
    int threes = 0;
    for (Vertex x : g.neighbors(v)) threes += g.degree(x) == 3;
    return threes == 0 ? VertexClass::good2 : threes == 1 ? VertexClass::bad2 : VertexClass::worst2;
  }
  if (d == 3) {
    int ones = 0, twos = 0, threes = 0;
    for (Vertex x : g.neighbors(v)) {
      ones += g.degree(x) == 1;
      twos += g.degree(x) == 2;
      threes += g.degree(x) == 3;
    }
    if (ones > 0) return VertexClass::unclassified;
    if (twos == 0) return VertexClass::good3;
    if (twos >= 2) return VertexClass::worst3;
    if (threes == 0) return VertexClass::sbad3;
    if (threes == 1) return VertexClass::bad3;
  }
  return VertexClass::unclassified;
}

inline auto is_cut_vertex(const PlaneGraph& g, Vertex v) -> bool {
  const auto& nb = g.neighbors(v);
  if (nb.size() < 2) return false;
  std::vector<char> seen(g.vertex_count(), 0);
  seen[v] = 1;
  seen[nb[0]] = 1;
  std::queue<Vertex> q;
  q.push(nb[0]);
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    for (Vertex y : g.neighbors(x))
      if (!seen[y]) seen[y] = 1, q.push(y);
  }
  return std::any_of(nb.begin(), nb.end(), [&](Vertex x) { return !seen[x]; });
}

// The anchor of a 2-thread adjacent to v has a t1- or t3-neighbor.
inline auto is_supported(const PlaneGraph& g, Vertex v) -> bool {
  const Thread* t = g.thread_at(v);
  if (!t || t->kind != 2)
    throw Error(Errc::not_on_2thread, "vertex " + std::to_string(v));
  Vertex anchor = t->front() == v ? t->u : t->w;
  for (Vertex x : g.neighbors(anchor)) {
    const Thread* s = g.thread_at(x);
    if (s && (s->kind == 1 || s->kind == 3)) return true;
  }
  return false;
}

}  // namespace oddcolor

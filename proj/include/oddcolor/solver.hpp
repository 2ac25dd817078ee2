#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coloring.hpp"
#include "plane_graph.hpp"

namespace oddcolor {

enum class Mode { odd, pcf };

inline auto to_string(Mode m) -> std::string { return m == Mode::odd ? "odd" : "pcf"; }

struct SolveResult {
  int value = 0;
  PartialColoring witness;
  long long nodes = 0;
  double seconds = 0;
};

struct SolveOptions {
  int guard = 40;
  long long node_limit = 0;  // 0 = unlimited
};

namespace detail {

// Backtracking search for a k-coloring extending `fixed`. Every vertex whose
// neighborhood becomes fully colored is checked immediately.
class Search {
 public:
  Search(const PlaneGraph& g, int k, Mode mode, const PartialColoring& fixed, long long node_limit)
      : g_(g), k_(k), mode_(mode), phi_(fixed.vertex_count() ? fixed : PartialColoring(g.vertex_count(), k)),
        limit_(node_limit) {
    const int n = g.vertex_count();
    cnt_.assign(n, std::vector<int>(k + 1, 0));
    rem_.assign(n, 0);
    for (Vertex v = 0; v < n; ++v)
      for (Vertex x : g.neighbors(v)) {
        if (phi_.has(x)) ++cnt_[v][phi_[x]];
        else ++rem_[v];
      }
    for (Vertex v = 0; v < n; ++v)
      if (phi_.has(v)) max_used_ = std::max(max_used_, phi_[v]);
    symmetric_ = phi_.domain_size() == 0;
  }

  auto run() -> std::optional<PartialColoring> {
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (rem_[v] == 0 && !satisfied(v)) return std::nullopt;
      if (!phi_.has(v)) continue;
      for (Vertex x : g_.neighbors(v))
        if (phi_.has(x) && phi_[x] == phi_[v]) return std::nullopt;
    }
    if (dfs()) return phi_;
    return std::nullopt;
  }
  auto nodes() const -> long long { return nodes_; }
  auto aborted() const -> bool { return aborted_; }

 private:
  auto satisfied(Vertex v) const -> bool {
    if (g_.degree(v) == 0) return true;
    for (Color c = 1; c <= k_; ++c) {
      int m = cnt_[v][c];
      if (mode_ == Mode::odd ? m % 2 == 1 : m == 1) return true;
    }
    return false;
  }

  auto pick() const -> Vertex {
    Vertex best = -1;
    int best_dom = 1 << 30, best_sat = -1;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (phi_.has(v)) continue;
      int dom = 0;
      for (Color c = 1; c <= k_; ++c) dom += cnt_[v][c] == 0;
      int sat = g_.degree(v) - rem_[v];
      if (dom < best_dom || (dom == best_dom && sat > best_sat)) {
        best = v;
        best_dom = dom;
        best_sat = sat;
      }
    }
    return best;
  }

  // Assign v = c and check every vertex whose neighborhood just closed.
  auto assign(Vertex v, Color c) -> bool {
    phi_.set(v, c);
    bool ok = true;
    for (Vertex x : g_.neighbors(v)) {
      ++cnt_[x][c];
      --rem_[x];
      if (rem_[x] == 0 && !satisfied(x)) ok = false;
    }
    if (rem_[v] == 0 && !satisfied(v)) ok = false;
    return ok;
  }
  void undo(Vertex v, Color c) {
    for (Vertex x : g_.neighbors(v)) {
      --cnt_[x][c];
      ++rem_[x];
    }
    phi_.unset(v);
  }

  auto dfs() -> bool {
    if (limit_ > 0 && nodes_ >= limit_) {
      aborted_ = true;
      return false;
    }
    ++nodes_;
    Vertex v = pick();
    if (v < 0) return true;
    const int top = symmetric_ ? std::min(k_, max_used_ + 1) : k_;
    for (Color c = 1; c <= top; ++c) {
      if (cnt_[v][c]) continue;
      const int saved = max_used_;
      max_used_ = std::max(max_used_, c);
      if (assign(v, c) && dfs()) return true;
      undo(v, c);
      max_used_ = saved;
      if (aborted_) return false;
    }
    return false;
  }

  const PlaneGraph& g_;
  int k_;
  Mode mode_;
  PartialColoring phi_;
  long long limit_;
  std::vector<std::vector<int>> cnt_;
  std::vector<int> rem_;
  int max_used_ = 0;
  bool symmetric_ = true;
  long long nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace detail

// A valid k-coloring of g under `mode`, if one exists.
inline auto solve_k(const PlaneGraph& g, int k, Mode mode, SolveOptions opt = {}, long long* nodes = nullptr)
    -> std::optional<PartialColoring> {
  if (g.vertex_count() > opt.guard)
    throw Error(Errc::too_large, std::to_string(g.vertex_count()) + " vertices > guard " + std::to_string(opt.guard));
  detail::Search s(g, k, mode, PartialColoring(g.vertex_count(), k), opt.node_limit);
  auto r = s.run();
  if (nodes) *nodes += s.nodes();
  if (s.aborted()) throw Error(Errc::too_large, "node limit reached at k=" + std::to_string(k));
  return r;
}

inline auto chromatic(const PlaneGraph& g, Mode mode, int max_k, SolveOptions opt = {}) -> SolveResult {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult r;
  for (int k = 1; k <= max_k; ++k) {
    auto w = solve_k(g, k, mode, opt, &r.nodes);
    if (w) {
      r.value = k;
      r.witness = *w;
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }
  }
  throw Error(Errc::exceeds, "no " + to_string(mode) + " coloring with " + std::to_string(max_k) + " colors");
}

inline auto chi_odd(const PlaneGraph& g, int max_k = 8, SolveOptions opt = {}) -> SolveResult {
  return chromatic(g, Mode::odd, max_k, opt);
}
inline auto chi_pcf(const PlaneGraph& g, int max_k = 8, SolveOptions opt = {}) -> SolveResult {
  return chromatic(g, Mode::pcf, max_k, opt);
}

// Extension of phi to every vertex of g, if one exists (no size guard; the
// caller keeps the uncolored part small).
inline auto complete(const PlaneGraph& g, const PartialColoring& phi, Mode mode, long long node_limit = 0)
    -> std::optional<PartialColoring> {
  detail::Search s(g, phi.palette_size(), mode, phi, node_limit);
  auto r = s.run();
  if (s.aborted()) throw Error(Errc::too_large, "node limit reached");
  return r;
}

// Every assignment of `targets` (at most 12) that leaves phi valid under the
// partial checker. Stops after `limit` completions.
inline auto extend_exhaustive(const PlaneGraph& g, const PartialColoring& phi_in, const std::vector<Vertex>& targets,
                              int k = 4, Mode mode = Mode::odd, std::size_t limit = 1u << 20)
    -> std::vector<PartialColoring> {
  if (targets.size() > 12) throw Error(Errc::too_many_targets, std::to_string(targets.size()) + " > 12");
  PartialColoring phi(g.vertex_count(), k);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (phi_in.has(v)) phi.set(v, phi_in[v]);
  for (Vertex t : targets) phi.unset(t);
  auto valid = [&](const PartialColoring& p) {
    return mode == Mode::odd ? is_odd_coloring(g, p).ok : is_pcf_coloring(g, p).ok;
  };
  std::vector<PartialColoring> out;
  std::vector<Color> cur(targets.size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (out.size() >= limit) return;
    if (i == targets.size()) {
      if (valid(phi)) out.push_back(phi);
      return;
    }
    const Vertex v = targets[i];
    for (Color c = 1; c <= k; ++c) {
      bool clash = false;
      for (Vertex x : g.neighbors(v)) clash = clash || (phi.has(x) && phi[x] == c);
      if (clash) continue;
      phi.set(v, c);
      self(self, i + 1);
      phi.unset(v);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace oddcolor

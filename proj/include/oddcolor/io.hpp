#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <nlohmann/json.hpp>

#include "coloring.hpp"
#include "discharging.hpp"
#include "embed.hpp"
#include "forbflex.hpp"
#include "plane_graph.hpp"
#include "reducible.hpp"
#include "solver.hpp"

namespace oddcolor {

using Json = nlohmann::json;

inline constexpr int kSchema = 1;

// ---- rotation text --------------------------------------------------------

namespace detail {

inline auto strip_comment(std::string line) -> std::string {
  if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
  return line;
}

inline auto parse_int(const std::string& tok, int line_no) -> int {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0)
    throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": bad vertex id '" + tok + "'");
  return v;
}

}  // namespace detail

// One line per vertex, `v: n1 n2 ... nk` with neighbors in counterclockwise
// order. Vertices never mentioned become isolated.
inline auto parse_rotation(const std::string& text) -> PlaneGraph {
  std::map<int, std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0, max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": missing ':'");
    std::string head = line.substr(0, colon);
    head.erase(std::remove_if(head.begin(), head.end(), ::isspace), head.end());
    int v = detail::parse_int(head, line_no);
    if (rows.count(v)) throw Error(Errc::malformed_rotation, "vertex " + std::to_string(v) + " listed twice");
    std::istringstream rest(line.substr(colon + 1));
    std::vector<int> nb;
    for (std::string tok; rest >> tok;) {
      int x = detail::parse_int(tok, line_no);
      nb.push_back(x);
      max_id = std::max(max_id, x);
    }
    max_id = std::max(max_id, v);
    rows[v] = std::move(nb);
  }
  std::vector<std::vector<Vertex>> rot(max_id + 1);
  for (auto& [v, nb] : rows) rot[v] = nb;
  return PlaneGraph::from_rotation(rot);
}

inline auto render_rotation(const PlaneGraph& g) -> std::string {
  std::ostringstream os;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    os << v << ':';
    for (Vertex x : g.neighbors(v)) os << ' ' << x;
    os << '\n';
  }
  return os.str();
}

// ---- graph6 ---------------------------------------------------------------

inline auto parse_graph6(std::string s) -> std::pair<int, EdgeList> {
  if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t pos = 0;
  auto next = [&]() -> int {
    if (pos >= s.size()) throw Error(Errc::parse_error, "graph6: truncated");
    int c = static_cast<unsigned char>(s[pos++]) - 63;
    if (c < 0 || c > 63) throw Error(Errc::parse_error, "graph6: byte out of range");
    return c;
  };
  long long n = 0;
  if (s.empty()) throw Error(Errc::parse_error, "graph6: empty");
  if (s[0] != '~') {
    n = next();
  } else {
    ++pos;
    int reps = 3;
    if (pos < s.size() && s[pos] == '~') ++pos, reps = 6;
    for (int i = 0; i < reps; ++i) n = (n << 6) | next();
  }
  if (n > 1'000'000) throw Error(Errc::parse_error, "graph6: too many vertices");
  EdgeList edges;
  int bit = 6, cur = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (bit == 6) cur = next(), bit = 0;
      if ((cur >> (5 - bit)) & 1) edges.emplace_back(i, j);
      ++bit;
    }
  return {static_cast<int>(n), edges};
}

inline auto render_graph6(const PlaneGraph& g) -> std::string {
  const int n = g.vertex_count();
  std::string out;
  if (n < 63) {
    out += static_cast<char>(63 + n);
  } else {
    out += '~';
    for (int sh = 12; sh >= 0; sh -= 6) out += static_cast<char>(63 + ((n >> sh) & 63));
  }
  int bit = 0, cur = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      cur = (cur << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++bit == 6) out += static_cast<char>(63 + cur), bit = 0, cur = 0;
    }
  if (bit) out += static_cast<char>(63 + (cur << (6 - bit)));
  return out;
}

// Reads either rotation text or a graph6 line (embedded on the fly).
inline auto load_graph(const std::string& text) -> PlaneGraph {
  std::string t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  if (t.find(':') == std::string::npos && t.find('\n') == std::string::npos && !t.empty()) {
    auto [n, e] = parse_graph6(t);
    return embed(n, e);
  }
  return parse_rotation(text);
}

// ---- colorings ------------------------------------------------------------

inline auto parse_coloring(const std::string& text, int n, int k = 4) -> PartialColoring {
  PartialColoring phi(n, k);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_comment(line);
    line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": expected v=c");
    int v = detail::parse_int(line.substr(0, eq), line_no);
    int c = detail::parse_int(line.substr(eq + 1), line_no);
    if (v >= n) throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": vertex out of range");
    phi.set(v, c);
  }
  return phi;
}

inline auto render_coloring(const PartialColoring& phi) -> std::string {
  std::ostringstream os;
  for (Vertex v = 0; v < phi.vertex_count(); ++v)
    if (phi.has(v)) os << v << '=' << phi[v] << '\n';
  return os.str();
}

inline auto to_json(const PartialColoring& phi) -> Json {
  return Json{{"palette", phi.palette_size()}, {"colors", phi.values()}};
}

// ---- generator ------------------------------------------------------------

struct GeneratorSpec {
  int skeleton = 4;
  int girth = 10;
  std::uint64_t seed = 1;
  double density = 0.6;     // chance to try each non-tree skeleton edge
  int max_subdivision = 3;  // per edge, unless the girth forces more
  bool inject_long_threads = false;
};

struct Generated {
  PlaneGraph graph;
  int skeleton_vertices = 0;
  std::vector<int> subdivisions;  // per skeleton edge
  std::optional<int> girth;
};

namespace detail {

inline auto is_planar(int n, const EdgeList& edges) -> bool {
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  G g(n);
  for (auto [a, b] : edges) boost::add_edge(a, b, g);
  return boost::boyer_myrvold_planarity_test(g);
}

// Shortest cycle of the skeleton under edge weights, via one Dijkstra per edge.
inline auto weighted_girth(int n, const EdgeList& edges, const std::vector<int>& w)
    -> std::pair<long long, std::vector<int>> {
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (to, edge index)
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    adj[edges[i].first].emplace_back(edges[i].second, i);
    adj[edges[i].second].emplace_back(edges[i].first, i);
  }
  const long long inf = std::numeric_limits<long long>::max() / 4;
  long long best = inf;
  std::vector<int> best_cycle;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    auto [s, t] = edges[e];
    std::vector<long long> dist(n, inf);
    std::vector<int> via(n, -1);
    using Q = std::pair<long long, int>;
    std::priority_queue<Q, std::vector<Q>, std::greater<>> pq;
    dist[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      for (auto [x, i] : adj[v]) {
        if (i == e) continue;
        if (d + w[i] < dist[x]) dist[x] = d + w[i], via[x] = i, pq.push({dist[x], x});
      }
    }
    if (dist[t] < inf && dist[t] + w[e] < best) {
      best = dist[t] + w[e];
      best_cycle = {e};
      for (int v = t; v != s;) {
        int i = via[v];
        best_cycle.push_back(i);
        v = edges[i].first == v ? edges[i].second : edges[i].first;
      }
    }
  }
  return {best, best_cycle};
}

}  // namespace detail

// Random connected plane skeleton, then per-edge subdivision until every
// cycle has length at least spec.girth. Deterministic per seed.
inline auto generate(const GeneratorSpec& spec) -> Generated {
  if (spec.skeleton < 4) throw Error(Errc::invalid_spec, "skeleton must have at least 4 vertices");
  if (spec.girth < 3) throw Error(Errc::invalid_spec, "girth must be at least 3");
  if (spec.max_subdivision < 0) throw Error(Errc::invalid_spec, "negative subdivision cap");
  std::mt19937_64 rng(spec.seed);
  const int n = spec.skeleton;
  EdgeList edges;
  if (n == 4) {
    edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  } else {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::set<std::pair<int, int>> have;
    auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    for (int i = 1; i < n; ++i) {
      int p = order[std::uniform_int_distribution<int>(0, i - 1)(rng)];
      edges.emplace_back(p, order[i]);
      have.insert(key(p, order[i]));
    }
    std::vector<std::pair<int, int>> cand;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (!have.count({a, b})) cand.emplace_back(a, b);
    std::shuffle(cand.begin(), cand.end(), rng);
    std::bernoulli_distribution take(spec.density);
    for (auto [a, b] : cand) {
      if (!take(rng)) continue;
      edges.emplace_back(a, b);
      if (!detail::is_planar(n, edges)) edges.pop_back();
    }
  }
  const int m = static_cast<int>(edges.size());
  std::vector<int> sub(m);
  const int cap = spec.max_subdivision + (spec.inject_long_threads ? 2 : 0);
  for (int i = 0; i < m; ++i) sub[i] = std::uniform_int_distribution<int>(0, cap)(rng);
  for (;;) {
    std::vector<int> w(m);
    for (int i = 0; i < m; ++i) w[i] = sub[i] + 1;
    auto [len, cyc] = detail::weighted_girth(n, edges, w);
    if (cyc.empty() || len >= spec.girth) break;
    std::vector<int> open;
    for (int e : cyc)
      if (sub[e] < spec.max_subdivision) open.push_back(e);
    if (open.empty()) open = cyc;
    ++sub[open[std::uniform_int_distribution<int>(0, static_cast<int>(open.size()) - 1)(rng)]];
  }

  // Embed the skeleton, then thread the subdivision vertices into the rotation.
  PlaneGraph skel = embed(n, edges);
  int next = n;
  std::map<std::pair<int, int>, std::vector<int>> chain;  // (a,b) with a<b: vertices from a to b
  for (int i = 0; i < m; ++i) {
    auto [a, b] = edges[i];
    std::vector<int> c;
    for (int j = 0; j < sub[i]; ++j) c.push_back(next++);
    if (a > b) std::reverse(c.begin(), c.end()), std::swap(a, b);
    chain[{a, b}] = c;
  }
  std::vector<std::vector<Vertex>> rot(next);
  auto first_toward = [&](int a, int b) {
    const auto& c = chain.at({std::min(a, b), std::max(a, b)});
    if (c.empty()) return b;
    return a < b ? c.front() : c.back();
  };
  for (int v = 0; v < n; ++v)
    for (Vertex x : skel.neighbors(v)) rot[v].push_back(first_toward(v, x));
  for (const auto& [ab, c] : chain) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      int prev = j == 0 ? ab.first : c[j - 1];
      int nxt = j + 1 == c.size() ? ab.second : c[j + 1];
      rot[c[j]] = {prev, nxt};
    }
  }
  Generated out;
  out.graph = PlaneGraph::from_rotation(rot);
  out.skeleton_vertices = n;
  out.subdivisions = sub;
  out.girth = girth(out.graph);
  return out;
}

// ---- JSON reports ---------------------------------------------------------

inline auto to_json(const ArrayRepresentation& r) -> Json {
  return Json{{"render", r.render()}, {"start", r.start}, {"reversed", r.reversed}};
}

inline auto faces_json(const PlaneGraph& g) -> Json {
  Json faces = Json::array();
  for (const Face& f : g.faces()) {
    Json j{{"id", f.id}, {"length", f.length()}, {"walk", f.walk}, {"degrees", f.degree_walk}};
    auto reps = parse_arrays(f.degree_walk);
    Json rs = Json::array();
    for (const auto& r : reps) rs.push_back(to_json(r));
    j["representations"] = rs;
    if (reps.empty()) j["class"] = "unrepresentable";
    else j["class"] = classify_walk(f.degree_walk) == FaceClass::poor ? "poor" : "rich";
    faces.push_back(j);
  }
  return Json{{"schema", kSchema}, {"faces", faces}};
}

inline auto to_json(const FlexReport& r) -> Json {
  Json types = Json::array();
  for (std::size_t i = 0; i < r.types.size(); ++i)
    types.push_back({{"neighbor", r.types[i].first}, {"type", to_string(r.types[i].second)}, {"score", r.scores[i]}});
  Json j{{"vertex", r.u}, {"types", types}, {"forb", r.forb}, {"flex", r.flex}};
  if (r.forb_colors) j["forb_set"] = r.forb_colors->to_vector();
  if (r.flex_colors) j["flex_set"] = r.flex_colors->to_vector();
  return j;
}

inline auto to_json(const ConfigurationHit& h) -> Json {
  Json j{{"kind", h.kind}, {"witness", h.witness}, {"applies", to_string(h.applies)}, {"detail", h.detail}};
  if (h.face >= 0) j["face"] = h.face;
  return j;
}

inline auto hits_json(const std::vector<ConfigurationHit>& hits, Theorem th) -> Json {
  Json a = Json::array();
  for (const auto& h : hits) a.push_back(to_json(h));
  return Json{{"schema", kSchema}, {"theorem", to_string(th)}, {"count", hits.size()}, {"hits", a}};
}

inline auto to_json(const AuditReport& r) -> Json {
  Json totals = Json::object();
  for (const auto& [st, t] : r.totals) totals[to_string(st)] = to_string(t);
  Json neg = Json::array();
  for (const auto& n : r.negatives)
    neg.push_back({{"element", n.element.name()}, {"value", to_string(n.value)}, {"local_hits", n.local_hits}});
  Json claims = Json::object();
  for (const auto& [k, v] : r.claims) claims[k] = v;
  Json charges = Json::object();
  for (std::size_t v = 0; v < r.final_state.vertex.size(); ++v)
    charges["v" + std::to_string(v)] = to_string(r.final_state.vertex[v]);
  for (std::size_t f = 0; f < r.final_state.face.size(); ++f)
    charges["f" + std::to_string(f)] = to_string(r.final_state.face[f]);
  Json j{{"schema", kSchema},
         {"theorem", to_string(r.theorem)},
         {"applicable", r.applicable},
         {"totals", totals},
         {"conserved", r.conserved()},
         {"negatives", neg},
         {"hit_count", r.hits.size()},
         {"claims", claims},
         {"unrepresentable_faces", r.unrepresentable_faces},
         {"final_charges", charges},
         {"critical", r.critical}};
  if (r.girth) j["girth"] = *r.girth;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline auto to_json(const SolveResult& r, Mode m) -> Json {
  return Json{{"schema", kSchema}, {"mode", to_string(m)},      {"value", r.value},
              {"nodes", r.nodes},   {"seconds", r.seconds},    {"witness", to_json(r.witness)}};
}

inline auto to_json(const PeelResult& r, Theorem th) -> Json {
  Json trace = Json::array();
  for (const auto& s : r.trace) trace.push_back({{"procedure", s.procedure}, {"vertices", s.vertices}});
  return Json{{"schema", kSchema},       {"theorem", to_string(th)}, {"coloring", to_json(r.coloring)},
              {"used_fallback", r.used_fallback}, {"trace", trace}};
}

}  // namespace oddcolor

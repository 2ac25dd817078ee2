#pragma once

#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include "plane_graph.hpp"

namespace oddcolor {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

// Planar embedding of an abstract simple connected graph. Planarity testing is
// delegated to Boost's Boyer-Myrvold implementation.
inline auto embed(int n, const EdgeList& edges) -> PlaneGraph {
  std::vector<std::vector<Vertex>> nb(n);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw Error(Errc::malformed_rotation, "edge endpoint out of range");
    if (a == b) throw Error(Errc::not_simple, "loop at " + std::to_string(a));
    nb[a].push_back(b);
    nb[b].push_back(a);
  }
  if (n > 0) {
    std::vector<char> seen(n, 0);
    std::queue<Vertex> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex x : nb[v])
        if (!seen[x]) seen[x] = 1, ++reached, q.push(x);
    }
    if (reached != n) throw Error(Errc::disconnected, std::to_string(n - reached) + " vertices unreachable");
  }

  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                  boost::property<boost::vertex_index_t, int>,
                                  boost::property<boost::edge_index_t, int>>;
  using E = boost::graph_traits<G>::edge_descriptor;
  G bg(n);
  for (auto [a, b] : edges) boost::add_edge(a, b, bg);
  int idx = 0;
  auto eidx = boost::get(boost::edge_index, bg);
  boost::graph_traits<G>::edge_iterator ei, ee;
  for (boost::tie(ei, ee) = boost::edges(bg); ei != ee; ++ei) boost::put(eidx, *ei, idx++);

  std::vector<std::vector<E>> emb(n);
  bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg)));
  if (!planar) throw Error(Errc::not_planar, "graph with " + std::to_string(n) + " vertices");

  std::vector<std::vector<Vertex>> rot(n);
  for (int v = 0; v < n; ++v)
    for (const E& e : emb[v]) {
      auto s = static_cast<Vertex>(boost::source(e, bg));
      auto t = static_cast<Vertex>(boost::target(e, bg));
      rot[v].push_back(s == v ? t : s);
    }
  return PlaneGraph::from_rotation(rot);
}

}  // namespace oddcolor

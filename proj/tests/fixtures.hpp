#ifndef SMALLWORLD_TESTS_FIXTURES_HPP
#define SMALLWORLD_TESTS_FIXTURES_HPP

#include <algorithm>
#include <vector>

#include "smallworld/graph.hpp"
#include "smallworld/rng.hpp"

namespace fixtures {

using smallworld::Dist;
using smallworld::Edge;
using smallworld::Graph;
using smallworld::NodeId;

inline Graph path(NodeId n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return smallworld::build_graph(n, false, e);
}

inline Graph cycle(NodeId n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return smallworld::build_graph(n, false, e);
}

inline Graph complete(NodeId n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return smallworld::build_graph(n, false, e);
}

inline Graph star(NodeId n) {
  std::vector<Edge> e;
  for (NodeId i = 1; i < n; ++i) e.emplace_back(0, i);
  return smallworld::build_graph(n, false, e);
}

inline Graph two_triangles() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  return smallworld::build_graph(6, false, e);
}

/// G(n, p) drawn with a plain per-pair coin, independent of the library's ER
/// generator.
inline Graph random_graph(NodeId n, double p, bool directed, std::uint64_t seed) {
  smallworld::Rng rng(seed);
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = directed ? 0 : i + 1; j < n; ++j)
      if (i != j && rng.bernoulli(p)) e.emplace_back(i, j);
  return smallworld::build_graph(n, directed, e);
}

/// All-pairs hop distances; kUnreachable where no path exists.
inline std::vector<std::vector<Dist>> floyd_warshall(const Graph& g) {
  const NodeId n = g.num_nodes();
  const std::uint64_t inf = smallworld::kUnreachable;
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, inf));
  for (NodeId u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (NodeId v : g.out_neighbors(u)) d[u][v] = std::min<std::uint64_t>(d[u][v], 1);
  }
  for (NodeId k = 0; k < n; ++k)
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        if (d[i][k] != inf && d[k][j] != inf) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::vector<std::vector<Dist>> out(n, std::vector<Dist>(n));
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j) out[i][j] = static_cast<Dist>(d[i][j]);
  return out;
}

}  // namespace fixtures

#endif  // SMALLWORLD_TESTS_FIXTURES_HPP

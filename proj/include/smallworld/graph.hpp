#ifndef SMALLWORLD_GRAPH_HPP
#define SMALLWORLD_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace smallworld {

using NodeId = std::uint32_t;
using Dist = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class Direction { kForward, kReverse };

/// Compressed sparse row adjacency. Row u is targets[offsets[u] .. offsets[u+1]).
struct Csr {
  std::vector<std::uint64_t> offsets{0};
  std::vector<NodeId> targets;

  std::span<const NodeId> row(NodeId u) const {
    return {targets.data() + offsets[u], targets.data() + offsets[u + 1]};
  }
  friend bool operator==(const Csr&, const Csr&) = default;
};

/// Immutable simple graph on nodes 0..n-1. Adjacency rows are sorted and
/// duplicate-free. Undirected graphs store each edge in both rows; directed
/// graphs additionally keep the reversed adjacency.
class Graph {
 public:
  Graph() = default;

  NodeId num_nodes() const { return n_; }
  bool directed() const { return directed_; }
  bool allow_self_loops() const { return allow_self_loops_; }

  std::span<const NodeId> out_neighbors(NodeId u) const { return out_.row(u); }
  std::span<const NodeId> in_neighbors(NodeId u) const {
    return directed_ ? in_.row(u) : out_.row(u);
  }
  std::span<const NodeId> neighbors(NodeId u, Direction d) const {
    return d == Direction::kForward ? out_neighbors(u) : in_neighbors(u);
  }

  std::size_t out_degree(NodeId u) const { return out_neighbors(u).size(); }
  std::size_t in_degree(NodeId u) const { return in_neighbors(u).size(); }

  /// Undirected: number of edges (a self-loop counts once). Directed: arcs.
  std::size_t num_edges() const { return num_edges_; }
  bool has_edge(NodeId u, NodeId v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(NodeId, bool, std::span<const Edge>, bool);

  NodeId n_ = 0;
  bool directed_ = false;
  bool allow_self_loops_ = false;
  std::size_t num_edges_ = 0;
  Csr out_;
  Csr in_;
};

/// Builds a graph from an edge list. Duplicate edges are collapsed.
/// Throws std::out_of_range for endpoints >= n and std::invalid_argument for
/// self-loops when they are not allowed.
Graph build_graph(NodeId n, bool directed, std::span<const Edge> edges,
                  bool allow_self_loops = false);

struct DistanceArray {
  NodeId source = 0;
  Direction direction = Direction::kForward;
  std::vector<Dist> dist;
};

DistanceArray bfs_distances(const Graph& g, NodeId source,
                            Direction direction = Direction::kForward);

/// Shortest-path tree parents, ties broken towards the smallest neighbor id.
/// In forward direction parent[v] is the predecessor of v on a shortest
/// source->v path; in reverse direction parent[v] is the next hop from v
/// towards the source. kNoNode for the source and for unreachable nodes.
std::vector<NodeId> bfs_parents(const Graph& g, const DistanceArray& d);

/// Point-to-point hop distance via bidirectional BFS. Holds per-query scratch
/// buffers; one instance per thread.
class DistanceQuery {
 public:
  explicit DistanceQuery(const Graph& g);
  Dist operator()(NodeId s, NodeId t);

 private:
  const Graph* g_;
  std::vector<std::uint32_t> stamp_fwd_;
  std::vector<std::uint32_t> stamp_bwd_;
  std::vector<Dist> dist_fwd_;
  std::vector<Dist> dist_bwd_;
  std::vector<NodeId> frontier_fwd_;
  std::vector<NodeId> frontier_bwd_;
  std::vector<NodeId> next_;
  std::uint32_t epoch_ = 0;
};

struct BallProfile {
  NodeId center = 0;
  std::vector<std::size_t> sizes;           // |B_u(r)|
  std::vector<std::size_t> boundary_edges;  // e(B_u(r), complement)
};

/// Ball sizes and boundary edge counts for r = 0, 1, ... until the ball stops
/// growing or r reaches r_max. For directed graphs the boundary counts arcs
/// leaving the ball.
BallProfile ball_profile(const Graph& g, NodeId u,
                         std::optional<Dist> r_max = std::nullopt);

struct ComponentInfo {
  std::vector<NodeId> component_id;
  NodeId largest_id = 0;
  std::size_t largest_size = 0;
  double largest_fraction = 0.0;
};

/// Connected components (weakly connected for directed graphs). Component
/// ids are assigned in order of each component's smallest node, so the
/// lowest id wins ties for "largest".
ComponentInfo largest_component(const Graph& g);

struct DegreeHistograms {
  std::map<std::size_t, std::size_t> out;
  std::map<std::size_t, std::size_t> in;
  std::map<std::size_t, std::size_t> total;
};

/// For undirected graphs all three maps coincide. For directed graphs total
/// is in + out.
DegreeHistograms degree_histogram(const Graph& g);

}  // namespace smallworld

#endif  // SMALLWORLD_GRAPH_HPP

#include "smallworld/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace smallworld {
namespace {

// Counting-sort the (src, dst) pairs into rows, then sort and dedupe each row.
Csr make_csr(NodeId n, std::span<const Edge> arcs) {
  Csr csr;
  csr.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : arcs) ++csr.offsets[u + 1];
  std::partial_sum(csr.offsets.begin(), csr.offsets.end(), csr.offsets.begin());
  csr.targets.resize(arcs.size());
  std::vector<std::uint64_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (const auto& [u, v] : arcs) csr.targets[cursor[u]++] = v;

  std::uint64_t write = 0;
  std::vector<std::uint64_t> compact(csr.offsets.size(), 0);
  for (NodeId u = 0; u < n; ++u) {
    auto first = csr.targets.begin() + static_cast<std::ptrdiff_t>(csr.offsets[u]);
    auto last = csr.targets.begin() + static_cast<std::ptrdiff_t>(csr.offsets[u + 1]);
    std::sort(first, last);
    auto end = std::unique(first, last);
    for (auto it = first; it != end; ++it) csr.targets[write++] = *it;
    compact[u + 1] = write;
  }
  csr.targets.resize(write);
  csr.targets.shrink_to_fit();
  csr.offsets = std::move(compact);
  return csr;
}

}  // namespace

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto row = out_neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

Graph build_graph(NodeId n, bool directed, std::span<const Edge> edges,
                  bool allow_self_loops) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::out_of_range("edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ") has endpoint >= n=" +
                              std::to_string(n));
    }
    if (u == v && !allow_self_loops) {
      throw std::invalid_argument("self-loop at node " + std::to_string(u) +
                                  " not allowed");
    }
  }

  Graph g;
  g.n_ = n;
  g.directed_ = directed;
  g.allow_self_loops_ = allow_self_loops;

  if (directed) {
    g.out_ = make_csr(n, edges);
    std::vector<Edge> reversed;
    reversed.reserve(edges.size());
    for (const auto& [u, v] : edges) reversed.emplace_back(v, u);
    g.in_ = make_csr(n, reversed);
    g.num_edges_ = g.out_.targets.size();
  } else {
    std::vector<Edge> arcs;
    arcs.reserve(2 * edges.size());
    for (const auto& [u, v] : edges) {
      arcs.emplace_back(u, v);
      if (u != v) arcs.emplace_back(v, u);
    }
    g.out_ = make_csr(n, arcs);
    std::size_t loops = 0;
    for (NodeId u = 0; u < n; ++u) {
      if (g.has_edge(u, u)) ++loops;
    }
    g.num_edges_ = (g.out_.targets.size() - loops) / 2 + loops;
  }
  return g;
}

DistanceArray bfs_distances(const Graph& g, NodeId source, Direction direction) {
  if (source >= g.num_nodes()) throw std::out_of_range("bfs source out of range");
  DistanceArray out{source, direction, std::vector<Dist>(g.num_nodes(), kUnreachable)};
  std::vector<NodeId> queue;
  queue.reserve(g.num_nodes());
  out.dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    Dist next = out.dist[u] + 1;
    for (NodeId v : g.neighbors(u, direction)) {
      if (out.dist[v] == kUnreachable) {
        out.dist[v] = next;
        queue.push_back(v);
      }
    }
  }
  return out;
}

std::vector<NodeId> bfs_parents(const Graph& g, const DistanceArray& d) {
  // The predecessor of v (forward) is an in-neighbor one level closer; the next
  // hop of v (reverse) is an out-neighbor one level closer. Rows are sorted, so
  // the first hit is the smallest id.
  const Direction look = d.direction == Direction::kForward ? Direction::kReverse
                                                            : Direction::kForward;
  std::vector<NodeId> parent(g.num_nodes(), kNoNode);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (v == d.source || d.dist[v] == kUnreachable) continue;
    for (NodeId w : g.neighbors(v, look)) {
      if (d.dist[w] != kUnreachable && d.dist[w] + 1 == d.dist[v]) {
        parent[v] = w;
        break;
      }
    }
  }
  return parent;
}

DistanceQuery::DistanceQuery(const Graph& g)
    : g_(&g),
      stamp_fwd_(g.num_nodes(), 0),
      stamp_bwd_(g.num_nodes(), 0),
      dist_fwd_(g.num_nodes(), 0),
      dist_bwd_(g.num_nodes(), 0) {}

Dist DistanceQuery::operator()(NodeId s, NodeId t) {
  if (s >= g_->num_nodes() || t >= g_->num_nodes()) {
    throw std::out_of_range("distance query endpoint out of range");
  }
  if (s == t) return 0;
  if (++epoch_ == 0) {
    std::fill(stamp_fwd_.begin(), stamp_fwd_.end(), 0);
    std::fill(stamp_bwd_.begin(), stamp_bwd_.end(), 0);
    epoch_ = 1;
  }
  stamp_fwd_[s] = epoch_;
  dist_fwd_[s] = 0;
  stamp_bwd_[t] = epoch_;
  dist_bwd_[t] = 0;
  frontier_fwd_.assign(1, s);
  frontier_bwd_.assign(1, t);

  // Expand one whole level of the side with the cheaper frontier; any meeting
  // found during that level is completed before returning the minimum.
  while (!frontier_fwd_.empty() && !frontier_bwd_.empty()) {
    auto volume = [&](const std::vector<NodeId>& f, Direction dir) {
      std::size_t total = 0;
      for (NodeId u : f) total += g_->neighbors(u, dir).size();
      return total;
    };
    const bool forward = volume(frontier_fwd_, Direction::kForward) <=
                         volume(frontier_bwd_, Direction::kReverse);
    auto& frontier = forward ? frontier_fwd_ : frontier_bwd_;
    auto& stamp = forward ? stamp_fwd_ : stamp_bwd_;
    auto& dist = forward ? dist_fwd_ : dist_bwd_;
    const auto& other_stamp = forward ? stamp_bwd_ : stamp_fwd_;
    const auto& other_dist = forward ? dist_bwd_ : dist_fwd_;
    const Direction dir = forward ? Direction::kForward : Direction::kReverse;

    Dist best = kUnreachable;
    next_.clear();
    for (NodeId u : frontier) {
      const Dist du = dist[u] + 1;
      for (NodeId v : g_->neighbors(u, dir)) {
        if (other_stamp[v] == epoch_) {
          best = std::min(best, du + other_dist[v]);
        }
        if (stamp[v] != epoch_) {
          stamp[v] = epoch_;
          dist[v] = du;
          next_.push_back(v);
        }
      }
    }
    if (best != kUnreachable) return best;
    frontier.swap(next_);
  }
  return kUnreachable;
}

BallProfile ball_profile(const Graph& g, NodeId u, std::optional<Dist> r_max) {
  if (u >= g.num_nodes()) throw std::out_of_range("ball center out of range");
  // Levels of a BFS truncated one level beyond r_max, so every node with
  // dist <= r_max is labelled and everything else is outside.
  std::vector<Dist> dist(g.num_nodes(), kUnreachable);
  std::vector<NodeId> order;
  std::vector<std::size_t> level_end;
  dist[u] = 0;
  order.push_back(u);
  std::size_t head = 0;
  const Dist limit = r_max ? *r_max : kUnreachable - 1;
  while (head < order.size()) {
    const std::size_t end = order.size();
    level_end.push_back(end);
    const Dist level = dist[order[head]];
    if (level >= limit) break;
    for (; head < end; ++head) {
      for (NodeId v : g.out_neighbors(order[head])) {
        if (dist[v] == kUnreachable) {
          dist[v] = level + 1;
          order.push_back(v);
        }
      }
    }
  }

  BallProfile profile;
  profile.center = u;
  std::size_t boundary = 0;
  std::size_t begin = 0;
  for (std::size_t r = 0; r < level_end.size(); ++r) {
    for (std::size_t i = begin; i < level_end[r]; ++i) {
      const NodeId v = order[i];
      if (g.directed()) {
        // Arcs into v from inside leave the boundary; v's arcs to nodes
        // outside B(r) join it.
        for (NodeId w : g.in_neighbors(v)) {
          if (w != v && dist[w] < r) --boundary;
        }
        for (NodeId w : g.out_neighbors(v)) {
          if (dist[w] > r) ++boundary;
        }
      } else {
        for (NodeId w : g.out_neighbors(v)) {
          if (w == v) continue;
          if (dist[w] < r) {
            --boundary;
          } else if (dist[w] > r) {
            ++boundary;
          }
        }
      }
    }
    begin = level_end[r];
    profile.sizes.push_back(level_end[r]);
    profile.boundary_edges.push_back(boundary);
  }
  return profile;
}

ComponentInfo largest_component(const Graph& g) {
  const NodeId n = g.num_nodes();
  ComponentInfo info;
  info.component_id.assign(n, kNoNode);
  std::vector<std::size_t> sizes;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (info.component_id[s] != kNoNode) continue;
    const auto label = static_cast<NodeId>(sizes.size());
    std::size_t size = 0;
    info.component_id[s] = label;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      ++size;
      auto visit = [&](std::span<const NodeId> row) {
        for (NodeId v : row) {
          if (info.component_id[v] == kNoNode) {
            info.component_id[v] = label;
            stack.push_back(v);
          }
        }
      };
      visit(g.out_neighbors(u));
      if (g.directed()) visit(g.in_neighbors(u));
    }
    sizes.push_back(size);
  }
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] > info.largest_size) {
      info.largest_size = sizes[c];
      info.largest_id = static_cast<NodeId>(c);
    }
  }
  info.largest_fraction = n == 0 ? 0.0 : static_cast<double>(info.largest_size) / n;
  return info;
}

DegreeHistograms degree_histogram(const Graph& g) {
  DegreeHistograms h;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const std::size_t out = g.out_degree(u);
    if (g.directed()) {
      const std::size_t in = g.in_degree(u);
      ++h.out[out];
      ++h.in[in];
      ++h.total[in + out];
    } else {
      ++h.total[out];
    }
  }
  if (!g.directed()) {
    h.out = h.total;
    h.in = h.total;
  }
  return h;
}

}  // namespace smallworld

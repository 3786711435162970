#include "smallworld/routing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "smallworld/rng.hpp"

namespace smallworld {
namespace {

std::uint32_t ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(x - 1));
}

void check_node(const Graph& g, NodeId u) {
  if (u >= g.num_nodes()) throw std::out_of_range("node id out of range");
}

}  // namespace

BeaconTables build_beacon_tables(const Graph& g, NodeId beacon) {
  check_node(g, beacon);
  BeaconTables t;
  t.beacon = beacon;
  auto from = bfs_distances(g, beacon, Direction::kForward);
  t.from_beacon = bfs_parents(g, from);
  t.dist_from = std::move(from.dist);
  if (g.directed()) {
    auto to = bfs_distances(g, beacon, Direction::kReverse);
    t.to_beacon = bfs_parents(g, to);
    t.dist_to = std::move(to.dist);
  } else {
    t.to_beacon = t.from_beacon;
    t.dist_to = t.dist_from;
  }
  return t;
}

std::optional<RoutedPath> beacon_route(const BeaconTables& t, NodeId a, NodeId b,
                                       const RouteOptions& options) {
  if (a >= t.dist_to.size() || b >= t.dist_to.size()) {
    throw std::out_of_range("node id out of range");
  }
  if (a == b) return RoutedPath{{a}, 0, false};
  if (t.dist_to[a] == kUnreachable || t.dist_from[b] == kUnreachable) return std::nullopt;

  std::vector<NodeId> up{a};
  while (up.back() != t.beacon) up.push_back(t.to_beacon[up.back()]);
  std::vector<NodeId> down{b};
  while (down.back() != t.beacon) down.push_back(t.from_beacon[down.back()]);
  std::reverse(down.begin(), down.end());  // beacon ... b

  RoutedPath path;
  path.via_beacon = true;
  std::size_t cut_up = up.size() - 1;  // index in up of the junction node
  std::size_t cut_down = 0;            // index in down of the same node
  if (options.drop_common_detour) {
    std::unordered_map<NodeId, std::size_t> where;
    for (std::size_t j = 0; j < down.size(); ++j) where.emplace(down[j], j);
    for (std::size_t i = 0; i < up.size(); ++i) {
      if (auto it = where.find(up[i]); it != where.end()) {
        cut_up = i;
        cut_down = it->second;
        break;
      }
    }
    path.via_beacon = up[cut_up] == t.beacon;
  }
  path.nodes.assign(up.begin(), up.begin() + static_cast<std::ptrdiff_t>(cut_up) + 1);
  path.nodes.insert(path.nodes.end(), down.begin() + static_cast<std::ptrdiff_t>(cut_down) + 1,
                    down.end());
  path.length = static_cast<Dist>(path.nodes.size() - 1);
  return path;
}

double StretchReport::quantile(double q) const {
  if (samples.empty()) return 0.0;
  std::vector<double> s;
  s.reserve(samples.size());
  for (const auto& x : samples) s.push_back(x.stretch);
  std::sort(s.begin(), s.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(s.size())));
  return s[std::clamp<std::size_t>(rank, 1, s.size()) - 1];
}

double StretchReport::fraction_at_most(double threshold) const {
  if (samples.empty()) return 0.0;
  const auto hits = std::count_if(samples.begin(), samples.end(), [&](const auto& x) {
    return x.stretch <= threshold + 1e-12;
  });
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

NodeId random_beacon(const Graph& g, std::uint64_t seed) {
  if (g.num_nodes() == 0) throw std::invalid_argument("empty graph");
  Rng rng(seed);
  return static_cast<NodeId>(rng.uniform_below(g.num_nodes()));
}

StretchReport stretch_report(const Graph& g, const BeaconTables& t,
                             std::uint64_t num_pairs, std::uint64_t seed,
                             const StretchOptions& options) {
  if (num_pairs == 0) throw std::invalid_argument("num_pairs must be >= 1");
  if (g.num_nodes() < 2) throw std::invalid_argument("need at least two nodes");
  Rng rng(seed);
  std::vector<Edge> pairs(num_pairs);
  for (auto& [a, b] : pairs) {
    a = static_cast<NodeId>(rng.uniform_below(g.num_nodes()));
    b = static_cast<NodeId>(rng.uniform_below(g.num_nodes() - 1));
    if (b >= a) ++b;
  }
  std::vector<Dist> exact(num_pairs);
  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(num_pairs)));
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (num_pairs + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = std::min<std::size_t>(num_pairs, w * chunk);
      const std::size_t end = std::min<std::size_t>(num_pairs, begin + chunk);
      pool.emplace_back([&, begin, end] {
        DistanceQuery query(g);
        for (std::size_t i = begin; i < end; ++i) exact[i] = query(pairs[i].first, pairs[i].second);
      });
    }
  }

  StretchReport report;
  report.sampled_pairs = num_pairs;
  for (std::size_t i = 0; i < num_pairs; ++i) {
    const auto [a, b] = pairs[i];
    if (exact[i] == kUnreachable) {
      ++report.unreachable;
      continue;
    }
    const auto route = beacon_route(t, a, b, options.route);
    if (!route) {
      ++report.unroutable;
      continue;
    }
    report.samples.push_back({a, b, exact[i], route->length,
                              static_cast<double>(route->length) / exact[i]});
  }
  return report;
}

DistributedReport distributed_beacon_sim(const Graph& g, const DistributedOptions& options) {
  if (g.directed()) throw std::invalid_argument("distributed_beacon_sim requires an undirected graph");
  if (options.max_rounds == 0) throw std::invalid_argument("max_rounds must be >= 1");
  const NodeId n = g.num_nodes();
  DistributedReport report;
  if (!options.beacons.empty()) {
    report.beacons = options.beacons;
    for (NodeId b : report.beacons) check_node(g, b);
    std::sort(report.beacons.begin(), report.beacons.end());
    report.beacons.erase(std::unique(report.beacons.begin(), report.beacons.end()),
                         report.beacons.end());
  } else {
    const double p = options.beacon_probability.value_or(
        std::log(static_cast<double>(n)) / static_cast<double>(n));
    for (NodeId u = 0; u < n; ++u) {
      Rng rng = Rng::stream(options.seed, u);
      if (rng.bernoulli(p)) report.beacons.push_back(u);
    }
  }

  const std::size_t k = report.beacons.size();
  const std::uint64_t entry_bits = 2ull * std::max<std::uint32_t>(1, ceil_log2(n));
  report.dist.assign(k, std::vector<Dist>(n, kUnreachable));
  report.next_hop.assign(k, std::vector<NodeId>(n, kNoNode));
  for (std::size_t b = 0; b < k; ++b) report.dist[b][report.beacons[b]] = 0;

  std::vector<std::uint32_t> known(n, 0);
  for (NodeId b : report.beacons) known[b] = 1;

  auto next = report.dist;
  auto next_hop = report.next_hop;
  for (std::size_t round = 1; round <= options.max_rounds; ++round) {
    std::uint64_t messages = 0;
    std::uint64_t bits = 0;
    for (NodeId u = 0; u < n; ++u) {
      messages += g.out_degree(u);
      bits += g.out_degree(u) * known[u] * entry_bits;
    }
    bool changed = false;
    for (std::size_t b = 0; b < k; ++b) {
      const auto& prev = report.dist[b];
      auto& cur = next[b];
      auto& hop = next_hop[b];
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : g.out_neighbors(u)) {
          if (prev[v] != kUnreachable && prev[v] + 1 < cur[u]) {
            cur[u] = prev[v] + 1;
            hop[u] = v;
            changed = true;
          }
        }
      }
    }
    report.messages_per_round.push_back(messages);
    report.bits_per_round.push_back(bits);
    report.rounds_executed = round;
    if (!changed) {
      report.converged = true;
      break;
    }
    ++report.rounds_to_fixpoint;
    report.dist = next;
    report.next_hop = next_hop;
    std::fill(known.begin(), known.end(), 0);
    for (std::size_t b = 0; b < k; ++b) {
      for (NodeId u = 0; u < n; ++u) {
        if (report.dist[b][u] != kUnreachable) ++known[u];
      }
    }
  }

  report.matches_bfs = true;
  for (std::size_t b = 0; b < k && report.matches_bfs; ++b) {
    report.matches_bfs = bfs_distances(g, report.beacons[b]).dist == report.dist[b];
  }
  return report;
}

NodeId port_target(const Graph& g, NodeId u, Port port) {
  const auto row = g.out_neighbors(u);
  if (port == 0 || port > row.size()) return kNoNode;
  return row[port - 1];
}

Port port_of(const Graph& g, NodeId u, NodeId v) {
  const auto row = g.out_neighbors(u);
  const auto it = std::lower_bound(row.begin(), row.end(), v);
  if (it == row.end() || *it != v) return 0;
  return static_cast<Port>(it - row.begin()) + 1;
}

CompactScheme compact_scheme_build(const Graph& g, NodeId beacon) {
  if (g.directed()) throw std::invalid_argument("compact scheme requires an undirected graph");
  check_node(g, beacon);
  const auto tree = bfs_distances(g, beacon);
  if (std::find(tree.dist.begin(), tree.dist.end(), kUnreachable) != tree.dist.end()) {
    throw std::invalid_argument("compact scheme requires a connected graph");
  }
  const auto parent = bfs_parents(g, tree);
  CompactScheme s;
  s.graph = &g;
  s.beacon = beacon;
  s.depth = tree.dist;
  s.port_to_beacon.assign(g.num_nodes(), 0);
  s.beacon_table.assign(g.num_nodes(), BeaconEntry{});
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (u == beacon) continue;
    s.port_to_beacon[u] = port_of(g, u, parent[u]);
    s.beacon_table[u] = {parent[u], port_of(g, parent[u], u)};
  }
  return s;
}

std::string Header::summary() const {
  std::ostringstream out;
  if (phase == 0) {
    out << "D:" << destination << ':' << phase;
  } else {
    out << "P:" << ports.size() << ':' << phase;
  }
  return out.str();
}

TraceResult compact_route_sim(const CompactScheme& s, NodeId u, NodeId v) {
  const Graph& g = *s.graph;
  check_node(g, u);
  check_node(g, v);
  TraceResult trace;
  Header header{0, v, {}};
  if (u == v) {
    trace.steps.push_back({u, 0, header, 0});
    trace.delivered = true;
    return trace;
  }

  NodeId cur = u;
  Port in_port = 0;
  const std::size_t step_limit = 2ull * g.num_nodes() + 4;
  while (trace.steps.size() < step_limit) {
    Header outgoing = header;
    Port out_port = 0;
    if (header.phase == 0 && cur == s.beacon) {
      if (v == s.beacon) {
        trace.steps.push_back({cur, in_port, header, 0});
        trace.delivered = true;
        return trace;
      }
      // Port list q_0..q_d along the tree path beacon -> v.
      std::vector<Port> ports;
      for (NodeId w = v; w != s.beacon;) {
        const auto& entry = s.beacon_table[w];
        if (entry.predecessor == kNoNode || ports.size() > g.num_nodes()) return trace;
        ports.push_back(entry.port);
        w = entry.predecessor;
      }
      std::reverse(ports.begin(), ports.end());
      out_port = ports.front();
      outgoing = Header{1, 0, std::vector<Port>(ports.begin() + 1, ports.end())};
    } else if (header.phase == 0) {
      out_port = s.port_to_beacon[cur];
    } else if (header.ports.empty()) {
      trace.steps.push_back({cur, in_port, header, 0});
      trace.delivered = cur == v;
      return trace;
    } else {
      out_port = header.ports.front();
      outgoing.ports.erase(outgoing.ports.begin());
    }

    trace.steps.push_back({cur, in_port, header, out_port});
    const NodeId next = port_target(g, cur, out_port);
    if (next == kNoNode) return trace;
    in_port = port_of(g, next, cur);
    cur = next;
    header = std::move(outgoing);
    ++trace.hops;
  }
  return trace;
}

std::string format_trace(const TraceResult& trace) {
  std::ostringstream out;
  for (const auto& step : trace.steps) {
    out << step.node << ' ' << step.in_port << ' ' << step.header.summary() << ' '
        << step.out_port << '\n';
  }
  return out.str();
}

MemoryAccount memory_account(const CompactScheme& s) {
  const Graph& g = *s.graph;
  const NodeId n = g.num_nodes();
  std::size_t max_degree = 0;
  for (NodeId u = 0; u < n; ++u) max_degree = std::max(max_degree, g.out_degree(u));
  MemoryAccount m;
  m.id_bits = std::max<std::uint32_t>(1, ceil_log2(n));
  m.port_bits = std::max<std::uint32_t>(1, ceil_log2(max_degree));
  m.per_node_bits.assign(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    m.per_node_bits[u] = u == s.beacon ? static_cast<std::uint64_t>(n - 1) * (m.id_bits + m.port_bits)
                                       : m.port_bits;
    m.total_bits += m.per_node_bits[u];
  }
  m.implied_constant = static_cast<double>(m.total_bits) /
                       (static_cast<double>(n) * std::log2(static_cast<double>(std::max<NodeId>(n, 2))));
  return m;
}

}  // namespace smallworld

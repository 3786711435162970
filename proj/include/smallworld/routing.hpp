#ifndef SMALLWORLD_ROUTING_HPP
#define SMALLWORLD_ROUTING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smallworld/graph.hpp"

namespace smallworld {

/// Shortest-path trees into and out of a single beacon.
struct BeaconTables {
  NodeId beacon = 0;
  std::vector<NodeId> to_beacon;    // next hop from u towards the beacon
  std::vector<NodeId> from_beacon;  // predecessor of u on the beacon's out-tree
  std::vector<Dist> dist_to;        // d(u, beacon)
  std::vector<Dist> dist_from;      // d(beacon, u)
};

/// Forward BFS from the beacon and BFS over reversed arcs; parents are the
/// smallest eligible neighbor id.
BeaconTables build_beacon_tables(const Graph& g, NodeId beacon);

struct RoutedPath {
  std::vector<NodeId> nodes;  // a = nodes.front(), b = nodes.back()
  Dist length = 0;
  bool via_beacon = false;
};

struct RouteOptions {
  /// Cut the detour around the beacon at the first node shared by both legs.
  bool drop_common_detour = false;
};

/// Concatenation of p(a, beacon) and p(beacon, b). nullopt when either leg is
/// unreachable. a == b yields the single-node path of length 0.
std::optional<RoutedPath> beacon_route(const BeaconTables& t, NodeId a, NodeId b,
                                       const RouteOptions& options = {});

struct StretchSample {
  NodeId a = 0;
  NodeId b = 0;
  Dist exact = 0;
  Dist routed = 0;
  double stretch = 1.0;
};

struct StretchReport {
  std::vector<StretchSample> samples;  // pairs with finite exact and routed length
  std::uint64_t sampled_pairs = 0;
  std::uint64_t unreachable = 0;       // exact distance infinite
  std::uint64_t unroutable = 0;        // reachable but a beacon leg is missing

  double quantile(double q) const;
  /// Fraction of routed pairs with stretch <= threshold.
  double fraction_at_most(double threshold) const;
};

struct StretchOptions {
  RouteOptions route{};
  unsigned threads = 1;
};

StretchReport stretch_report(const Graph& g, const BeaconTables& t,
                             std::uint64_t num_pairs, std::uint64_t seed,
                             const StretchOptions& options = {});

/// Picks a uniformly random beacon from the seed.
NodeId random_beacon(const Graph& g, std::uint64_t seed);

struct DistributedOptions {
  /// Explicit beacons; when empty each node becomes a beacon with
  /// `beacon_probability` (default ln(n)/n).
  std::vector<NodeId> beacons;
  std::optional<double> beacon_probability;
  std::size_t max_rounds = 1000;
  std::uint64_t seed = 0;
};

struct DistributedReport {
  std::vector<NodeId> beacons;
  bool converged = false;
  std::size_t rounds_to_fixpoint = 0;  // rounds in which some entry changed
  std::size_t rounds_executed = 0;     // includes the final quiet round
  std::vector<std::uint64_t> messages_per_round;  // one value vector per arc
  std::vector<std::uint64_t> bits_per_round;      // (beacon id, distance) entries sent
  bool matches_bfs = false;
  /// dist[b][u] for the b-th beacon; kUnreachable when unknown.
  std::vector<std::vector<Dist>> dist;
  std::vector<std::vector<NodeId>> next_hop;
};

/// Bulk-synchronous distance-vector relaxation towards every beacon. Each round
/// reads only the previous round's tables. Undirected graphs only.
DistributedReport distributed_beacon_sim(const Graph& g, const DistributedOptions& options);

/// Port numbers are 1-based positions in the sorted adjacency row.
using Port = std::uint32_t;

struct BeaconEntry {
  NodeId predecessor = kNoNode;
  Port port = 0;  // predecessor's port for the edge to this node
};

/// Port/header routing state: each non-beacon node stores the port of its
/// next hop towards the beacon; the beacon stores (predecessor, port) for
/// every other node of its BFS tree.
struct CompactScheme {
  const Graph* graph = nullptr;
  NodeId beacon = 0;
  std::vector<Port> port_to_beacon;       // 0 at the beacon
  std::vector<BeaconEntry> beacon_table;  // indexed by destination; empty at beacon
  std::vector<Dist> depth;                // tree depth, for bookkeeping only
};

/// Undirected connected graphs only; throws std::invalid_argument otherwise.
CompactScheme compact_scheme_build(const Graph& g, NodeId beacon);

/// Neighbor behind a port, or kNoNode for an invalid port.
NodeId port_target(const Graph& g, NodeId u, Port port);
/// Port at u for the edge to v, or 0 if not adjacent.
Port port_of(const Graph& g, NodeId u, NodeId v);

struct Header {
  int phase = 0;
  NodeId destination = 0;     // phase 0
  std::vector<Port> ports;    // phase 1: remaining ports
  std::string summary() const;  // D:<v>:<phase> or P:<k>:<phase>
};

struct TraceStep {
  NodeId node = 0;
  Port in_port = 0;
  Header header;
  Port out_port = 0;  // 0 when the message stops here
};

struct TraceResult {
  std::vector<TraceStep> steps;
  bool delivered = false;
  std::size_t hops = 0;
};

/// Runs the two-phase protocol from u to v: header (v,0) climbs the stored
/// ports to the beacon, which rewrites it to the tree port list
/// (q_1..q_d, 1) and sends it out on q_0; each later hop pops one port.
TraceResult compact_route_sim(const CompactScheme& s, NodeId u, NodeId v);

/// One line per step: `node in_port header_summary out_port`.
std::string format_trace(const TraceResult& trace);

struct MemoryAccount {
  std::uint32_t id_bits = 0;    // ceil(log2 n)
  std::uint32_t port_bits = 0;  // ceil(log2 max_degree), at least 1
  std::vector<std::uint64_t> per_node_bits;
  std::uint64_t total_bits = 0;
  double implied_constant = 0.0;  // total / (n log2 n)
};

MemoryAccount memory_account(const CompactScheme& s);

}  // namespace smallworld

#endif  // SMALLWORLD_ROUTING_HPP

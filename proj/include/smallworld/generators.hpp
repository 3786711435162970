#ifndef SMALLWORLD_GENERATORS_HPP
#define SMALLWORLD_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "smallworld/graph.hpp"
#include "smallworld/rng.hpp"

namespace smallworld {

struct ErdosRenyi {
  NodeId n = 0;
  double mean_degree = 0.0;
};

struct WattsStrogatz {
  NodeId n = 0;
  NodeId m = 0;
  double p_rewire = 0.0;
};

struct Kleinberg {
  NodeId n = 0;
  double r = 0.0;
  NodeId p_local = 1;
  NodeId q_long = 1;
};

struct BarabasiAlbert {
  NodeId n = 0;
  NodeId m_attach = 1;
};

struct Configuration {
  NodeId n = 0;
  double tau = 3.0;
};

/// Uniform simple d-regular graph (pairing model with restarts).
struct RandomRegular {
  NodeId n = 0;
  NodeId degree = 3;
};

using ModelParams = std::variant<ErdosRenyi, WattsStrogatz, Kleinberg,
                                 BarabasiAlbert, Configuration, RandomRegular>;

struct ModelSpec {
  ModelParams model;
  std::uint64_t seed = 0;
};

NodeId model_size(const ModelSpec& spec);
/// Same model and seed with the node count replaced.
ModelSpec with_size(const ModelSpec& spec, NodeId n);
std::string model_name(const ModelSpec& spec);
/// Throws std::invalid_argument on a parameter range violation.
void validate(const ModelSpec& spec);

/// Side-channel facts about a generated graph that the Graph itself drops.
struct GeneratorStats {
  std::size_t long_range_trials = 0;     // Kleinberg: raw q*n draws
  std::size_t long_range_collapsed = 0;  // Kleinberg: draws that hit an existing arc
  std::size_t rewired_edges = 0;         // Watts-Strogatz
  std::size_t discarded_edges = 0;       // configuration model: loops + multi-edges
  std::size_t restarts = 0;              // random regular
};

struct Generated {
  Graph graph;
  GeneratorStats stats;
};

/// Dispatches on the model. A pure function of the spec.
Generated generate(const ModelSpec& spec);

Graph gen_erdos_renyi(NodeId n, double mean_degree, std::uint64_t seed);

/// A Watts-Strogatz edge with the node that owned it during rewiring.
struct WsEdge {
  NodeId fixed = 0;
  NodeId other = 0;
  bool rewired = false;
};

struct WsResult {
  Graph graph;
  std::vector<WsEdge> edges;  // exactly n*m, in rewiring order
  std::size_t rewired = 0;
};

Graph gen_watts_strogatz(NodeId n, NodeId m, double p_rewire, std::uint64_t seed);
WsResult gen_watts_strogatz_traced(NodeId n, NodeId m, double p_rewire,
                                   std::uint64_t seed);

Generated gen_kleinberg(NodeId n, double r, NodeId p_local, NodeId q_long,
                        std::uint64_t seed);
Graph gen_barabasi_albert(NodeId n, NodeId m_attach, std::uint64_t seed);
Generated gen_configuration(NodeId n, double tau, std::uint64_t seed);
Generated gen_random_regular(NodeId n, NodeId degree, std::uint64_t seed);

/// 1-based lattice point; node id = (y-1)*side + (x-1).
struct LatticeCoord {
  NodeId x = 1;
  NodeId y = 1;
  friend bool operator==(const LatticeCoord&, const LatticeCoord&) = default;
};

/// Exact integer square root of n; throws std::invalid_argument if n is not
/// a perfect square.
NodeId lattice_side(NodeId n);
LatticeCoord to_lattice(NodeId n, NodeId u);
NodeId from_lattice(NodeId n, LatticeCoord c);

/// L1 distance on the sqrt(n) x sqrt(n) torus.
Dist kleinberg_lattice_distance(NodeId n, NodeId u, NodeId v);

/// Long-range contact law on the torus: P(u -> v) proportional to
/// d(u,v)^-r over v != u (and over all v, self included, when r == 0).
/// Offsets are stored sorted by lattice distance; a draw picks a distance
/// class by its aggregate weight and then a uniform offset inside it.
class LongRangeLaw {
 public:
  LongRangeLaw(NodeId n, double r);

  NodeId side() const { return side_; }
  double r() const { return r_; }
  /// sum of d^-r over the support (n when r == 0).
  double normalizer() const { return normalizer_; }
  /// count of nodes at lattice distance d from any fixed node.
  const std::vector<std::size_t>& class_sizes() const { return class_sizes_; }
  double probability(Dist d) const;

  NodeId sample(NodeId u, Rng& rng) const;
  /// Targets at lattice distance 1..radius from u (local arcs).
  std::vector<NodeId> ball(NodeId u, Dist radius) const;

 private:
  NodeId target(NodeId u, std::size_t offset_index) const;

  NodeId side_;
  double r_;
  double normalizer_ = 0.0;
  std::vector<std::pair<NodeId, NodeId>> offsets_;  // (dx, dy), sorted by distance
  std::vector<std::size_t> class_start_;            // offsets_ index of each distance
  std::vector<std::size_t> class_sizes_;
  std::vector<double> cumulative_;                  // over the sampled classes
  Dist first_class_ = 1;
};

}  // namespace smallworld

#endif  // SMALLWORLD_GENERATORS_HPP

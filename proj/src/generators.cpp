#include "smallworld/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace smallworld {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.uniform_below(i)]);
  }
}

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

NodeId model_size(const ModelSpec& spec) {
  return std::visit([](const auto& m) { return m.n; }, spec.model);
}

ModelSpec with_size(const ModelSpec& spec, NodeId n) {
  ModelSpec out = spec;
  std::visit([n](auto& m) { m.n = n; }, out.model);
  return out;
}

std::string model_name(const ModelSpec& spec) {
  struct Name {
    std::string operator()(const ErdosRenyi&) const { return "er"; }
    std::string operator()(const WattsStrogatz&) const { return "ws"; }
    std::string operator()(const Kleinberg&) const { return "kleinberg"; }
    std::string operator()(const BarabasiAlbert&) const { return "ba"; }
    std::string operator()(const Configuration&) const { return "config"; }
    std::string operator()(const RandomRegular&) const { return "regular"; }
  };
  return std::visit(Name{}, spec.model);
}

void validate(const ModelSpec& spec) {
  struct Check {
    void operator()(const ErdosRenyi& m) const {
      require(m.n >= 2, "n must be >= 2");
      require(m.mean_degree > 0.0 && m.mean_degree <= m.n - 1.0,
              "mean_degree must be in (0, n-1]");
    }
    void operator()(const WattsStrogatz& m) const {
      require(m.n >= 2, "n must be >= 2");
      require(m.m >= 1 && 2ull * m.m < m.n, "WS requires 1 <= m < n/2");
      require(m.p_rewire >= 0.0 && m.p_rewire <= 1.0, "p_rewire must be in [0,1]");
    }
    void operator()(const Kleinberg& m) const {
      require(m.n >= 2, "n must be >= 2");
      lattice_side(m.n);
      require(m.r >= 0.0 && m.r < 2.0, "Kleinberg r must be in [0,2)");
      require(m.p_local >= 1 && m.q_long >= 1, "p_local and q_long must be >= 1");
    }
    void operator()(const BarabasiAlbert& m) const {
      require(m.n >= 2, "n must be >= 2");
      require(m.m_attach >= 1 && m.n > m.m_attach, "BA requires 1 <= m_attach < n");
    }
    void operator()(const Configuration& m) const {
      require(m.n >= 2, "n must be >= 2");
      require(m.tau > 2.0, "configuration model requires tau > 2");
    }
    void operator()(const RandomRegular& m) const {
      require(m.n >= 2, "n must be >= 2");
      require(m.degree >= 1 && m.degree < m.n, "degree must be in [1, n)");
      require((static_cast<std::uint64_t>(m.n) * m.degree) % 2 == 0,
              "n * degree must be even");
    }
  };
  std::visit(Check{}, spec.model);
}

Generated generate(const ModelSpec& spec) {
  validate(spec);
  const std::uint64_t seed = spec.seed;
  struct Run {
    std::uint64_t seed;
    Generated operator()(const ErdosRenyi& m) const {
      return {gen_erdos_renyi(m.n, m.mean_degree, seed), {}};
    }
    Generated operator()(const WattsStrogatz& m) const {
      auto ws = gen_watts_strogatz_traced(m.n, m.m, m.p_rewire, seed);
      GeneratorStats stats;
      stats.rewired_edges = ws.rewired;
      return {std::move(ws.graph), stats};
    }
    Generated operator()(const Kleinberg& m) const {
      return gen_kleinberg(m.n, m.r, m.p_local, m.q_long, seed);
    }
    Generated operator()(const BarabasiAlbert& m) const {
      return {gen_barabasi_albert(m.n, m.m_attach, seed), {}};
    }
    Generated operator()(const Configuration& m) const {
      return gen_configuration(m.n, m.tau, seed);
    }
    Generated operator()(const RandomRegular& m) const {
      return gen_random_regular(m.n, m.degree, seed);
    }
  };
  return std::visit(Run{seed}, spec.model);
}

// Batagelj-Brandes geometric skipping over the lower triangle.
Graph gen_erdos_renyi(NodeId n, double mean_degree, std::uint64_t seed) {
  validate({ErdosRenyi{n, mean_degree}, seed});
  const double p = std::min(1.0, mean_degree / (n - 1.0));
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1.0) / 2.0 * 1.05) + 16);
  if (p >= 1.0) {
    for (NodeId v = 1; v < n; ++v) {
      for (NodeId w = 0; w < v; ++w) edges.emplace_back(v, w);
    }
    return build_graph(n, false, edges);
  }
  Rng rng(seed);
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double u = rng.uniform01();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-u) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(w));
  }
  return build_graph(n, false, edges);
}

Graph gen_watts_strogatz(NodeId n, NodeId m, double p_rewire, std::uint64_t seed) {
  return gen_watts_strogatz_traced(n, m, p_rewire, seed).graph;
}

WsResult gen_watts_strogatz_traced(NodeId n, NodeId m, double p_rewire,
                                   std::uint64_t seed) {
  validate({WattsStrogatz{n, m, p_rewire}, seed});
  std::vector<std::vector<NodeId>> adj(n);
  for (NodeId i = 0; i < n; ++i) {
    adj[i].reserve(2 * m + 4);
    for (NodeId o = 1; o <= m; ++o) {
      adj[i].push_back((i + o) % n);
      adj[i].push_back((i + n - o) % n);
    }
  }
  auto adjacent = [&](NodeId a, NodeId b) {
    return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
  };
  auto erase = [&](NodeId a, NodeId b) {
    auto it = std::find(adj[a].begin(), adj[a].end(), b);
    *it = adj[a].back();
    adj[a].pop_back();
  };

  WsResult out;
  out.edges.reserve(static_cast<std::size_t>(n) * m);
  Rng rng(seed);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId o = 1; o <= m; ++o) {
      const NodeId j = (i + o) % n;
      const bool rewire = rng.bernoulli(p_rewire) && adj[i].size() < n - 1;
      if (!rewire) {
        out.edges.push_back({i, j, false});
        continue;
      }
      NodeId k;
      do {
        k = static_cast<NodeId>(rng.uniform_below(n));
      } while (k == i || adjacent(i, k));
      erase(i, j);
      erase(j, i);
      adj[i].push_back(k);
      adj[k].push_back(i);
      out.edges.push_back({i, k, true});
      ++out.rewired;
    }
  }
  std::vector<Edge> edges;
  edges.reserve(out.edges.size());
  for (const auto& e : out.edges) edges.emplace_back(e.fixed, e.other);
  out.graph = build_graph(n, false, edges);
  return out;
}

NodeId lattice_side(NodeId n) {
  auto side = static_cast<NodeId>(std::llround(std::sqrt(static_cast<double>(n))));
  while (static_cast<std::uint64_t>(side) * side > n) --side;
  while (static_cast<std::uint64_t>(side + 1) * (side + 1) <= n) ++side;
  if (static_cast<std::uint64_t>(side) * side != n || n == 0) {
    throw std::invalid_argument("n=" + std::to_string(n) + " is not a perfect square");
  }
  return side;
}

LatticeCoord to_lattice(NodeId n, NodeId u) {
  const NodeId side = lattice_side(n);
  if (u >= n) throw std::out_of_range("node id out of range");
  return {u % side + 1, u / side + 1};
}

NodeId from_lattice(NodeId n, LatticeCoord c) {
  const NodeId side = lattice_side(n);
  if (c.x < 1 || c.x > side || c.y < 1 || c.y > side) {
    throw std::out_of_range("lattice coordinate out of range");
  }
  return (c.y - 1) * side + (c.x - 1);
}

Dist kleinberg_lattice_distance(NodeId n, NodeId u, NodeId v) {
  const NodeId side = lattice_side(n);
  if (u >= n || v >= n) throw std::out_of_range("node id out of range");
  auto axis = [side](NodeId a, NodeId b) {
    const NodeId d = a > b ? a - b : b - a;
    return std::min(d, side - d);
  };
  return axis(u % side, v % side) + axis(u / side, v / side);
}

LongRangeLaw::LongRangeLaw(NodeId n, double r) : side_(lattice_side(n)), r_(r) {
  offsets_.reserve(n);
  for (NodeId dy = 0; dy < side_; ++dy) {
    for (NodeId dx = 0; dx < side_; ++dx) offsets_.emplace_back(dx, dy);
  }
  auto dist = [this](const std::pair<NodeId, NodeId>& o) {
    return std::min(o.first, side_ - o.first) + std::min(o.second, side_ - o.second);
  };
  std::stable_sort(offsets_.begin(), offsets_.end(),
                   [&](const auto& a, const auto& b) { return dist(a) < dist(b); });
  const Dist max_d = dist(offsets_.back());
  class_sizes_.assign(max_d + 1, 0);
  for (const auto& o : offsets_) ++class_sizes_[dist(o)];
  class_start_.assign(max_d + 2, 0);
  for (Dist d = 0; d <= max_d; ++d) class_start_[d + 1] = class_start_[d] + class_sizes_[d];

  first_class_ = r_ == 0.0 ? 0 : 1;
  double total = 0.0;
  for (Dist d = first_class_; d <= max_d; ++d) {
    const double weight = r_ == 0.0 ? 1.0 : std::pow(static_cast<double>(d), -r_);
    total += weight * static_cast<double>(class_sizes_[d]);
    cumulative_.push_back(total);
  }
  normalizer_ = total;
}

double LongRangeLaw::probability(Dist d) const {
  if (d == 0) return r_ == 0.0 ? 1.0 / normalizer_ : 0.0;
  return std::pow(static_cast<double>(d), -r_) / normalizer_;
}

NodeId LongRangeLaw::target(NodeId u, std::size_t offset_index) const {
  const auto [dx, dy] = offsets_[offset_index];
  const NodeId x = (u % side_ + dx) % side_;
  const NodeId y = (u / side_ + dy) % side_;
  return y * side_ + x;
}

NodeId LongRangeLaw::sample(NodeId u, Rng& rng) const {
  const double x = rng.uniform01() * normalizer_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  std::size_t cls = static_cast<std::size_t>(it - cumulative_.begin());
  if (cls >= cumulative_.size()) cls = cumulative_.size() - 1;
  const Dist d = first_class_ + static_cast<Dist>(cls);
  const std::size_t pick = class_start_[d] + rng.uniform_below(class_sizes_[d]);
  return target(u, pick);
}

std::vector<NodeId> LongRangeLaw::ball(NodeId u, Dist radius) const {
  std::vector<NodeId> out;
  const Dist top = std::min<Dist>(radius, static_cast<Dist>(class_sizes_.size() - 1));
  for (std::size_t i = class_start_[1]; i < class_start_[top + 1]; ++i) {
    out.push_back(target(u, i));
  }
  return out;
}

Generated gen_kleinberg(NodeId n, double r, NodeId p_local, NodeId q_long,
                        std::uint64_t seed) {
  validate({Kleinberg{n, r, p_local, q_long}, seed});
  const LongRangeLaw law(n, r);
  std::vector<Edge> arcs;
  arcs.reserve(static_cast<std::size_t>(n) * (2ull * p_local * (p_local + 1) + q_long));
  Generated out;
  std::vector<NodeId> targets;
  for (NodeId u = 0; u < n; ++u) {
    targets = law.ball(u, p_local);
    const std::size_t local = targets.size();
    Rng rng = Rng::stream(seed, u);
    for (NodeId t = 0; t < q_long; ++t) targets.push_back(law.sample(u, rng));
    out.stats.long_range_trials += q_long;
    std::sort(targets.begin(), targets.end());
    const auto distinct = static_cast<std::size_t>(
        std::unique(targets.begin(), targets.end()) - targets.begin());
    out.stats.long_range_collapsed += local + q_long - distinct;
    for (std::size_t i = 0; i < distinct; ++i) arcs.emplace_back(u, targets[i]);
  }
  out.graph = build_graph(n, true, arcs, r == 0.0);
  return out;
}

Graph gen_barabasi_albert(NodeId n, NodeId m_attach, std::uint64_t seed) {
  validate({BarabasiAlbert{n, m_attach}, seed});
  const NodeId m = m_attach;
  std::vector<Edge> edges;
  // Each node appears in `ends` once per incident edge.
  std::vector<NodeId> ends;
  ends.reserve(2ull * m * n);
  for (NodeId u = 0; u <= m; ++u) {
    for (NodeId v = u + 1; v <= m; ++v) {
      edges.emplace_back(u, v);
      ends.push_back(u);
      ends.push_back(v);
    }
  }
  Rng rng(seed);
  std::vector<NodeId> chosen;
  for (NodeId i = m + 1; i < n; ++i) {
    chosen.clear();
    while (chosen.size() < m) {
      const NodeId t = ends[rng.uniform_below(ends.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    for (NodeId t : chosen) {
      edges.emplace_back(i, t);
      ends.push_back(t);
      ends.push_back(i);
    }
  }
  return build_graph(n, false, edges);
}

Generated gen_configuration(NodeId n, double tau, std::uint64_t seed) {
  validate({Configuration{n, tau}, seed});
  Rng rng(seed);
  // Inverse transform for P(D >= d) = d^(1-tau); capped at n-1.
  std::vector<std::uint64_t> degree(n);
  std::uint64_t total = 0;
  for (NodeId u = 0; u < n; ++u) {
    const double x = 1.0 - rng.uniform01();
    const double d = std::floor(std::pow(x, -1.0 / (tau - 1.0)));
    degree[u] = static_cast<std::uint64_t>(std::min(d, n - 1.0));
    total += degree[u];
  }
  if (total % 2 == 1) {
    ++degree[rng.uniform_below(n)];
    ++total;
  }
  std::vector<NodeId> stubs;
  stubs.reserve(total);
  for (NodeId u = 0; u < n; ++u) stubs.insert(stubs.end(), degree[u], u);
  shuffle(stubs, rng);

  Generated out;
  std::vector<Edge> edges;
  edges.reserve(total / 2);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(total);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const NodeId a = stubs[i];
    const NodeId b = stubs[i + 1];
    if (a == b || !seen.insert(edge_key(a, b)).second) {
      ++out.stats.discarded_edges;
      continue;
    }
    edges.emplace_back(a, b);
  }
  out.graph = build_graph(n, false, edges);
  return out;
}

Generated gen_random_regular(NodeId n, NodeId degree, std::uint64_t seed) {
  validate({RandomRegular{n, degree}, seed});
  constexpr std::size_t kMaxRestarts = 10000;
  Rng rng(seed);
  std::vector<NodeId> stubs;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  Generated out;
  for (std::size_t attempt = 0; attempt < kMaxRestarts; ++attempt) {
    stubs.clear();
    for (NodeId u = 0; u < n; ++u) stubs.insert(stubs.end(), degree, u);
    shuffle(stubs, rng);
    edges.clear();
    seen.clear();
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && simple; i += 2) {
      const NodeId a = stubs[i];
      const NodeId b = stubs[i + 1];
      simple = a != b && seen.insert(edge_key(a, b)).second;
      edges.emplace_back(a, b);
    }
    if (simple) {
      out.graph = build_graph(n, false, edges);
      return out;
    }
    ++out.stats.restarts;
  }
  throw std::runtime_error("random regular pairing did not produce a simple graph");
}

}  // namespace smallworld

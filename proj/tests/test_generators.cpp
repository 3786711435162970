#include <doctest.h>

#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

#include "fixtures.hpp"
#include "smallworld/generators.hpp"

using namespace smallworld;

namespace {

double chi_squared_p_value(const std::vector<double>& observed, const std::vector<double>& expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

Dist ring_distance(NodeId n, NodeId i, NodeId j) {
  const NodeId a = i > j ? i - j : j - i;
  return std::min(a, n - a);
}

}  // namespace

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(validate({ErdosRenyi{1, 0.5}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({ErdosRenyi{10, 0.0}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({WattsStrogatz{10, 5, 0.1}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({WattsStrogatz{10, 2, 1.5}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({Kleinberg{10, 0.0, 1, 1}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({Kleinberg{16, 2.0, 1, 1}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({Kleinberg{16, 1.0, 0, 1}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({BarabasiAlbert{3, 3}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({Configuration{100, 2.0}, 0}), std::invalid_argument);
  CHECK_NOTHROW(validate({Kleinberg{16, 1.999, 1, 1}, 0}));
}

TEST_CASE("Erdos-Renyi") {
  const Graph k = gen_erdos_renyi(30, 29.0, 1);
  CHECK(k == fixtures::complete(30));

  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = gen_erdos_renyi(10000, 4.0, seed);
    const double mean = 2.0 * static_cast<double>(g.num_edges()) / 10000.0;
    within += std::abs(mean - 4.0) <= 0.2;
  }
  CHECK(within >= 99);

  CHECK(gen_erdos_renyi(2000, 6.0, 42) == gen_erdos_renyi(2000, 6.0, 42));
  CHECK(!(gen_erdos_renyi(2000, 6.0, 42) == gen_erdos_renyi(2000, 6.0, 43)));
}

TEST_CASE("Erdos-Renyi pair frequencies are uniform") {
  // Each of the 45 pairs of K_10 at p = 0.3 should appear with equal frequency.
  std::vector<double> hits(45, 0.0);
  const int trials = 4000;
  for (int s = 0; s < trials; ++s) {
    const Graph g = gen_erdos_renyi(10, 2.7, s);
    std::size_t idx = 0;
    for (NodeId i = 0; i < 10; ++i)
      for (NodeId j = i + 1; j < 10; ++j, ++idx) hits[idx] += g.has_edge(i, j);
  }
  for (double h : hits) CHECK(std::abs(h / trials - 0.3) < 0.04);
}

TEST_CASE("Watts-Strogatz ring lattice and edge conservation") {
  const NodeId n = 60;
  const NodeId m = 3;
  const Graph lattice = gen_watts_strogatz(n, m, 0.0, 9);
  const auto fw = fixtures::floyd_warshall(lattice);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j)
      CHECK(fw[i][j] == (ring_distance(n, i, j) + m - 1) / m);

  for (double p : {0.1, 0.5, 1.0}) {
    const Graph g = gen_watts_strogatz(500, 4, p, 11);
    CHECK(g.num_edges() == 2000);
  }
  CHECK(gen_watts_strogatz(1000000, 10, 0.2, 1).num_edges() == 10000000);
}

TEST_CASE("Watts-Strogatz trace at p = 1") {
  const auto ws = gen_watts_strogatz_traced(20, 2, 1.0, 5);
  REQUIRE(ws.edges.size() == 40);
  CHECK(ws.rewired == 40);
  std::map<NodeId, int> fixed_stubs;
  for (const auto& e : ws.edges) {
    CHECK(e.rewired);
    CHECK(ws.graph.has_edge(e.fixed, e.other));
    ++fixed_stubs[e.fixed];
  }
  for (NodeId i = 0; i < 20; ++i) CHECK(fixed_stubs[i] == 2);
  CHECK(ws.graph.num_edges() == 40);
}

TEST_CASE("lattice coordinates and torus distance") {
  CHECK(lattice_side(16) == 4);
  CHECK_THROWS_AS(lattice_side(15), std::invalid_argument);
  for (NodeId u = 0; u < 25; ++u) CHECK(from_lattice(25, to_lattice(25, u)) == u);
  CHECK(to_lattice(9, 0) == LatticeCoord{1, 1});
  CHECK(kleinberg_lattice_distance(9, 4, 4) == 0);
  CHECK(kleinberg_lattice_distance(9, from_lattice(9, {1, 1}), from_lattice(9, {3, 3})) == 2);

  std::map<Dist, int> classes;
  for (NodeId v = 1; v < 16; ++v) ++classes[kleinberg_lattice_distance(16, 0, v)];
  CHECK(classes == std::map<Dist, int>{{1, 4}, {2, 6}, {3, 4}, {4, 1}});
}

TEST_CASE("Kleinberg degree structure on 3x3") {
  const auto gen = gen_kleinberg(9, 1.0, 1, 1, 3);
  for (NodeId u = 0; u < 9; ++u) {
    std::size_t local = 0;
    for (NodeId v : gen.graph.out_neighbors(u)) local += kleinberg_lattice_distance(9, u, v) == 1;
    CHECK(local == 4);
    CHECK(gen.graph.out_degree(u) <= 5);
    CHECK(gen.graph.out_degree(u) >= 4);
  }
  CHECK(gen.stats.long_range_trials == 9);
  std::size_t arcs = 0;
  for (NodeId u = 0; u < 9; ++u) arcs += gen.graph.out_degree(u);
  CHECK(arcs + gen.stats.long_range_collapsed == 9 * 5);
}

TEST_CASE("long-range law normalizer and class sizes") {
  const LongRangeLaw law(16, 2.0);
  const double z = 4.0 + 6.0 / 4.0 + 4.0 / 9.0 + 1.0 / 16.0;
  CHECK(law.normalizer() == doctest::Approx(z).epsilon(1e-14));
  CHECK(z == doctest::Approx(6.00694).epsilon(1e-5));

  for (NodeId side : {3u, 4u, 7u, 10u}) {
    const NodeId n = side * side;
    const LongRangeLaw l(n, 1.0);
    std::map<Dist, std::size_t> brute;
    for (NodeId v = 1; v < n; ++v) ++brute[kleinberg_lattice_distance(n, 0, v)];
    for (const auto& [d, c] : brute) CHECK(l.class_sizes().at(d) == c);
  }
  for (NodeId n : {16u, 100u, 1024u, 10000u}) {
    CHECK(LongRangeLaw(n, 2.0).normalizer() <= 4.0 * std::log(static_cast<double>(n)));
  }
}

TEST_CASE("long-range samples follow d^-2 / Z on the 4x4 torus") {
  const NodeId n = 16;
  const LongRangeLaw law(n, 2.0);
  for (NodeId u : {0u, 5u, 15u}) {
    std::vector<double> observed(n, 0.0);
    Rng rng(100 + u);
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i) observed[law.sample(u, rng)] += 1.0;
    CHECK(observed[u] == 0.0);
    std::vector<double> obs;
    std::vector<double> expected;
    for (NodeId v = 0; v < n; ++v) {
      if (v == u) continue;
      const double d = kleinberg_lattice_distance(n, u, v);
      obs.push_back(observed[v]);
      expected.push_back(draws * std::pow(d, -2.0) / law.normalizer());
    }
    CHECK(chi_squared_p_value(obs, expected) > 0.01);
  }
}

TEST_CASE("r = 0 long-range target is uniform including self") {
  const NodeId n = 16;
  const LongRangeLaw law(n, 0.0);
  CHECK(law.normalizer() == 16.0);
  std::vector<double> observed(n, 0.0);
  Rng rng(77);
  const int draws = 320000;
  for (int i = 0; i < draws; ++i) observed[law.sample(6, rng)] += 1.0;
  CHECK(observed[6] > 0.0);
  CHECK(chi_squared_p_value(observed, std::vector<double>(n, draws / 16.0)) > 0.01);
}

TEST_CASE("Barabasi-Albert") {
  const Graph g = gen_barabasi_albert(20000, 3, 4);
  const double mean = 2.0 * static_cast<double>(g.num_edges()) / g.num_nodes();
  CHECK(mean == doctest::Approx(6.0).epsilon(0.01));
  // The seed clique contributes m(m+1)/2 edges, every later node exactly m.
  CHECK(g.num_edges() == 6 + 3 * (20000 - 4));
  for (NodeId u = 4; u < g.num_nodes(); ++u) CHECK(g.out_degree(u) >= 3);
  CHECK(g == gen_barabasi_albert(20000, 3, 4));
}

TEST_CASE("configuration model") {
  const auto gen = gen_configuration(20000, 2.5, 8);
  const auto& g = gen.graph;
  CHECK(g.num_nodes() == 20000);
  std::size_t max_degree = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) max_degree = std::max(max_degree, g.out_degree(u));
  CHECK(max_degree > 50);  // heavy tail
  CHECK(max_degree <= g.num_nodes() - 1);
  CHECK(gen.graph == gen_configuration(20000, 2.5, 8).graph);
}

TEST_CASE("random regular") {
  const auto gen = gen_random_regular(1000, 3, 2);
  for (NodeId u = 0; u < 1000; ++u) CHECK(gen.graph.out_degree(u) == 3);
  CHECK_THROWS_AS(gen_random_regular(11, 3, 1), std::invalid_argument);
}

TEST_CASE("generate dispatches and is a pure function of the model and seed") {
  const ModelSpec spec{WattsStrogatz{400, 3, 0.3}, 17};
  CHECK(generate(spec).graph == gen_watts_strogatz(400, 3, 0.3, 17));
  CHECK(model_name(spec) == "ws");
  CHECK(model_size(with_size(spec, 800)) == 800);
  const ModelSpec k{Kleinberg{64 * 64, 1.0, 1, 2}, 5};
  CHECK(generate(k).graph == generate(k).graph);
}

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "smallworld/analytics.hpp"
#include "smallworld/cli.hpp"
#include "smallworld/generators.hpp"
#include "smallworld/io.hpp"
#include "smallworld/metrics.hpp"
#include "smallworld/routing.hpp"

using namespace smallworld;

namespace {

constexpr double kAlphaPaper = 3.38298;
constexpr double kAlphaTol = 1e-4;
constexpr double kRatio40Tol = 1e-3;
constexpr double kMethodAgreeTol = 1e-9;
constexpr double kRatio60Tol = 1e-6;
constexpr double kMedianLow = 0.75;
constexpr double kMedianHigh = 1.5;
constexpr double kKleinbergWindowFloor = 0.5;
constexpr double kWsWindowFloor = 0.8;
constexpr double kWsFedTv = 0.02;
constexpr double kErTwoValueMass = 0.9;
constexpr double kPumpAlpha = 0.05;
constexpr double kPumpEps = 0.1;
constexpr double kRegularPassFloor = 0.95;
constexpr double kStretchThreshold = 2.5;
constexpr double kStretchFraction = 0.9;
constexpr double kMemoryConstantCap = 4.0;
constexpr double kMemoryDrift = 0.25;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit_s,
               const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream timing;
  timing << "runtime " << secs << " s <= " << time_limit_s << " s";
  o.require(secs <= time_limit_s, timing.str());
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << title << ":" << o.detail.str()
            << " (" << secs << " s)" << std::endl;
}

bool non_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) return false;
  return true;
}

std::string list(const std::vector<double>& v) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  s << ']';
  return s.str();
}

/// Explicit ball-set evaluation of the two PUMP clauses at one center.
PumpCenterResult pump_brute_force(const Graph& g, NodeId u, int percent, double alpha) {
  const NodeId n = g.num_nodes();
  const auto dist = bfs_distances(g, u).dist;
  Dist max_r = 0;
  for (Dist d : dist)
    if (d != kUnreachable) max_r = std::max(max_r, d);
  PumpCenterResult out;
  for (Dist r = 0; r <= max_r; ++r) {
    std::vector<char> in(n, 0);
    std::uint64_t size = 0;
    for (NodeId v = 0; v < n; ++v)
      if (dist[v] <= r) in[v] = 1, ++size;
    std::uint64_t cut = 0;
    for (NodeId a = 0; a < n; ++a)
      if (in[a])
        for (NodeId b : g.out_neighbors(a)) cut += !in[b];
    const std::uint64_t lo = static_cast<std::uint64_t>(percent) * n;
    const std::uint64_t hi = static_cast<std::uint64_t>(100 - percent) * n;
    if (100 * size >= lo) out.big_ball = true;
    if (100 * size < lo || 100 * size > hi) continue;
    const double ratio = static_cast<double>(cut) / static_cast<double>(size);
    out.min_ratio = out.min_ratio ? std::min(*out.min_ratio, ratio) : ratio;
    if (ratio < alpha) out.expands = false;
  }
  return out;
}

std::string cli(std::vector<std::string> args) {
  args.insert(args.begin(), "smallworld");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(args, out, err);
  if (code != kExitOk) throw std::runtime_error("cli failed: " + err.str());
  return out.str();
}

}  // namespace

int main() {
  std::cout.precision(6);

  criterion(1, "recurrence golden values", 1.0, [](Outcome& o) {
    const auto s = recurrence_c(60);
    const auto c = s.integers();
    o.require(c[0] == 1 && c[1] == 1 && c[2] == 5 && c[3] == 17 && c[4] == 57, "prefix [1,1,5,17,57]");
    bool agree = true;
    for (std::size_t i = 3; i < 60; ++i)
      agree = agree && c[i + 1] == 2 * c[i] + 4 * c[i - 1] + 2 * c[i - 2] + c[i - 3];
    o.require(agree, "order-4 agreement to i=60");
    const double r40 = s.ratios[40];
    o.require(std::abs(r40 - kAlphaPaper) <= kRatio40Tol, "C41/C40 near alpha");
    o.detail << " C41/C40=" << r40;
  });

  criterion(2, "dominant eigenvalue", 1.0, [](Outcome& o) {
    const auto a = dominant_eigenvalue(companion_matrix<double>(1, 1));
    o.require(std::abs(a.alpha - kAlphaPaper) <= kAlphaTol, "alpha(1,1)");
    o.require(std::abs(a.power_iteration - a.bisection) <= kMethodAgreeTol, "methods agree");
    double worst = 0.0;
    for (int p = 1; p <= 4; ++p)
      for (int q = 1; q <= 4; ++q) {
        const auto e = dominant_eigenvalue(companion_matrix<double>(p, q));
        o.require(std::abs(e.power_iteration - e.bisection) <= kMethodAgreeTol, "methods agree (p,q)");
        const auto series = recurrence_c_general(p, q, 60);
        worst = std::max(worst, std::abs(series.ratios[59] - e.alpha));
      }
    o.require(worst <= kRatio60Tol, "ratio at i=60 vs eigenvalue");
    o.detail << " alpha=" << a.alpha << " max|ratio60-alpha|=" << worst;
  });

  criterion(3, "long-range lower bound", 30.0, [](Outcome& o) {
    std::size_t checked = 0;
    double tightest = 1e300;
    for (NodeId side = 3; side <= 100; ++side) {
      for (double r : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        const auto b = verify_longrange_lower_bound(side * side, r);
        ++checked;
        tightest = std::min(tightest, b.min_prob / b.bound);
        if (!b.holds) o.require(false, "n=" + std::to_string(side * side) + " r=" + std::to_string(r));
      }
    }
    o.detail << " cases=" << checked << " min(min_prob/bound)=" << tightest;
  });

  const double alpha = dominant_eigenvalue(companion_matrix<double>(1, 1)).alpha;

  criterion(4, "Kleinberg r=0 idemetric trend", 300.0, [alpha](Outcome& o) {
    const ModelSpec family{Kleinberg{64 * 64, 0.0, 1, 1}, kSeed};
    ScanOptions options;
    options.b_list = {2};
    const auto scan = idemetric_scan(family, {64 * 64, 128 * 128, 256 * 256}, 10000, options);
    std::vector<double> ratio;
    std::vector<double> window;
    for (const auto& p : scan.points) {
      ratio.push_back(p.report.median_distance / predict_ell(p.n, alpha));
      window.push_back(p.report.window.front().mass);
    }
    bool median_ok = true;
    for (double x : ratio) median_ok = median_ok && x >= kMedianLow && x <= kMedianHigh;
    o.require(median_ok, "(a) median/ell_n in [0.75, 1.5]");
    o.require(non_decreasing(window), "(b) window_mass(b=2) non-decreasing");
    o.require(window.back() >= kKleinbergWindowFloor, "(b) window_mass(b=2) >= 0.5 at largest n");
    o.detail << " median/ell=" << list(ratio) << " window_mass(2)=" << list(window);
  });

  criterion(5, "Watts-Strogatz strong idemetric trend", 300.0, [](Outcome& o) {
    const ModelSpec family{WattsStrogatz{1 << 14, 10, 0.2}, kSeed};
    ScanOptions options;
    options.b_list = {2};
    const auto scan = idemetric_scan(family, {1 << 14, 1 << 16, 1 << 18}, 10000, options);
    std::vector<double> window;
    for (const auto& p : scan.points) window.push_back(p.report.window.front().mass);
    bool floor_ok = true;
    for (double w : window) floor_ok = floor_ok && w >= kWsWindowFloor;
    o.require(floor_ok, "window_mass(b=2) >= 0.8 at every size");
    o.require(non_decreasing(window), "window_mass(b=2) non-decreasing");
    const auto fed = fed_check(with_size(family, 1 << 16), {1 << 16, 1 << 17});
    const double tv = *fed.points.front().tv_to_reference;
    o.require(tv < kWsFedTv, "TV to m + Bin(m, 0.8) + Poisson(2) at n=2^16");
    o.detail << " window_mass(2)=" << list(window) << " tv(2^16)=" << tv;
  });

  criterion(6, "Erdos-Renyi concentration", 120.0, [](Outcome& o) {
    const Graph g = gen_erdos_renyi(50000, 25.0, kSeed);
    const auto comp = largest_component(g);
    o.require(comp.largest_fraction == 1.0, "connected");
    const auto h = sample_pair_distances(g, 100000, mix64(kSeed + 1));
    double best = 0.0;
    Dist at = 0;
    for (const auto& [d, c] : h.counts) {
      const auto next = h.counts.find(d + 1);
      const double mass =
          static_cast<double>(c + (next == h.counts.end() ? 0 : next->second)) / h.finite_pairs();
      if (mass > best) best = mass, at = d;
    }
    o.require(best >= kErTwoValueMass, "two adjacent distances carry >= 0.9");
    o.detail << " largest_fraction=" << comp.largest_fraction << " mass{" << at << "," << at + 1
             << "}=" << best;
  });

  criterion(7, "PUMP discrimination", 60.0, [](Outcome& o) {
    std::vector<Edge> ring;
    for (NodeId i = 0; i < 10000; ++i) ring.emplace_back(i, (i + 1) % 10000);
    const Graph cycle = build_graph(10000, false, ring);
    const auto c = pump_check(cycle, kPumpEps, 200, kPumpAlpha, kSeed);
    o.require(c.pass_fraction == 0.0, "cycle pass_fraction = 0");
    const Graph reg = gen_random_regular(10000, 3, kSeed).graph;
    const auto r = pump_check(reg, kPumpEps, 200, kPumpAlpha, kSeed);
    o.require(r.pass_fraction >= kRegularPassFloor, "3-regular pass_fraction >= 0.95");

    std::size_t graphs = 0;
    std::size_t mismatches = 0;
    for (std::uint64_t s = 0; s < 30; ++s) {
      const NodeId n = 10 + static_cast<NodeId>((s * 37) % 191);
      std::vector<Graph> suite;
      suite.push_back(gen_erdos_renyi(n, std::min(3.0, n - 2.0), s));
      suite.push_back(gen_watts_strogatz(n, 2, 0.05 * static_cast<double>(s % 10), s));
      if (n % 2 == 0) suite.push_back(gen_random_regular(n, 3, s).graph);
      suite.push_back(gen_barabasi_albert(n, 2, s));
      for (const auto& g : suite) {
        ++graphs;
        for (int percent : {5, 10, 20, 45})
          for (double a : {0.02, kPumpAlpha, 0.3})
            for (NodeId u = 0; u < n; ++u) {
              const auto fast = pump_center(ball_profile(g, u), n, percent / 100.0, a);
              const auto slow = pump_brute_force(g, u, percent, a);
              mismatches += fast.big_ball != slow.big_ball || fast.expands != slow.expands ||
                            fast.min_ratio != slow.min_ratio;
            }
      }
    }
    o.require(mismatches == 0, "brute-force clause oracle equality");
    o.detail << " cycle=" << c.pass_fraction << " regular=" << r.pass_fraction
             << " oracle_graphs=" << graphs << " mismatches=" << mismatches;
  });

  criterion(8, "beacon routing", 180.0, [](Outcome& o) {
    const std::vector<ModelSpec> suite{
        {ErdosRenyi{5000, 6.0}, kSeed},          {WattsStrogatz{5000, 3, 0.2}, kSeed},
        {Kleinberg{70 * 70, 1.0, 1, 1}, kSeed},  {BarabasiAlbert{5000, 2}, kSeed},
        {Configuration{5000, 2.5}, kSeed},       {RandomRegular{5000, 3}, kSeed}};
    std::size_t checked = 0;
    bool exact = true;
    for (const auto& spec : suite) {
      const Graph g = generate(spec).graph;
      const auto t = build_beacon_tables(g, random_beacon(g, kSeed));
      Rng rng(kSeed);
      for (int i = 0; i < 10000; ++i) {
        const auto a = static_cast<NodeId>(rng.uniform_below(g.num_nodes()));
        const auto b = static_cast<NodeId>(rng.uniform_below(g.num_nodes()));
        const auto route = beacon_route(t, a, b);
        if (!route || a == b) continue;
        ++checked;
        exact = exact && route->length == t.dist_to[a] + t.dist_from[b] &&
                route->nodes.size() == route->length + 1;
      }
    }
    o.require(exact, "routed length = dist_to(a) + dist_from(b)");

    std::vector<double> fractions;
    for (const ModelSpec& spec : {ModelSpec{WattsStrogatz{100000, 10, 0.2}, kSeed},
                                  ModelSpec{Kleinberg{256 * 256, 0.0, 1, 1}, kSeed}}) {
      const Graph g = generate(spec).graph;
      const auto t = build_beacon_tables(g, random_beacon(g, kSeed));
      const auto rep = stretch_report(g, t, 10000, mix64(kSeed + 2));
      fractions.push_back(rep.fraction_at_most(kStretchThreshold));
    }
    o.require(fractions[0] >= kStretchFraction, "WS stretch<=2.5 fraction >= 0.9");
    o.require(fractions[1] >= kStretchFraction, "Kleinberg stretch<=2.5 fraction >= 0.9");
    o.detail << " checked_routes=" << checked << " fraction(stretch<=2.5) ws,kleinberg="
             << list(fractions);
  });

  criterion(9, "distributed beacon fixpoint", 60.0, [](Outcome& o) {
    std::size_t graphs = 0;
    std::size_t beacons = 0;
    std::size_t worst_slack = 0;
    bool all_match = true;
    bool rounds_ok = true;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const NodeId n = 500 + static_cast<NodeId>(s * 475);
      ModelSpec spec;
      switch (s % 4) {
        case 0: spec = {ErdosRenyi{n, 8.0}, kSeed + s}; break;
        case 1: spec = {WattsStrogatz{n, 4, 0.2}, kSeed + s}; break;
        case 2: spec = {RandomRegular{n + n % 2, 3}, kSeed + s}; break;
        default: spec = {BarabasiAlbert{n, 3}, kSeed + s}; break;
      }
      const Graph g = generate(spec).graph;
      DistributedOptions options;
      options.seed = mix64(kSeed + s);
      const auto rep = distributed_beacon_sim(g, options);
      ++graphs;
      beacons += rep.beacons.size();
      // Each beacon's eccentricity is a lower bound on the diameter.
      Dist ecc_lower = 0;
      for (std::size_t b = 0; b < rep.beacons.size(); ++b) {
        const auto d = bfs_distances(g, rep.beacons[b]).dist;
        all_match = all_match && d == rep.dist[b];
        for (Dist x : d)
          if (x != kUnreachable) ecc_lower = std::max(ecc_lower, x);
      }
      all_match = all_match && rep.converged && rep.matches_bfs;
      rounds_ok = rounds_ok && rep.rounds_to_fixpoint <= ecc_lower + 1;
      worst_slack = std::max<std::size_t>(worst_slack, rep.rounds_to_fixpoint);
    }
    o.require(all_match, "fixpoint distances equal BFS for every beacon");
    o.require(rounds_ok, "rounds_to_fixpoint <= diameter + 1");
    o.detail << " graphs=" << graphs << " beacons=" << beacons << " max_rounds=" << worst_slack;
  });

  criterion(10, "compact routing", 60.0, [](Outcome& o) {
    std::vector<double> constants;
    for (NodeId n : {10000u, 20000u}) {
      const Graph g = gen_watts_strogatz(n, 5, 0.2, kSeed);
      const NodeId beacon = random_beacon(g, kSeed);
      const auto scheme = compact_scheme_build(g, beacon);
      const auto mem = memory_account(scheme);
      constants.push_back(mem.implied_constant);
      if (n != 10000) continue;
      const auto t = build_beacon_tables(g, beacon);
      Rng rng(kSeed);
      bool ok = true;
      for (int i = 0; i < 1000; ++i) {
        const auto u = static_cast<NodeId>(rng.uniform_below(n));
        const auto v = static_cast<NodeId>(rng.uniform_below(n));
        const auto trace = compact_route_sim(scheme, u, v);
        const std::size_t expect = u == v ? 0 : t.dist_to[u] + t.dist_from[v];
        ok = ok && trace.delivered && trace.hops == expect;
      }
      o.require(ok, "1000 pairs delivered with hops = dist_to(u) + dist_from(v)");
      o.require(mem.implied_constant <= kMemoryConstantCap, "memory / (n log2 n) <= 4");
    }
    const double drift = std::abs(constants[1] / constants[0] - 1.0);
    o.require(drift <= kMemoryDrift, "implied constant within 25% when n doubles");
    o.detail << " implied_constant(1e4, 2e4)=" << list(constants) << " drift=" << drift;
  });

  criterion(11, "determinism across reruns and thread counts", 120.0, [](Outcome& o) {
    const std::vector<std::vector<std::string>> commands{
        {"distances", "--model", "ws", "--n", "65536", "--m", "10", "--p", "0.2", "--pairs",
         "10000", "--seed", "7"},
        {"distances", "--model", "ws", "--n", "65536", "--m", "10", "--p", "0.2", "--pairs",
         "10000", "--seed", "7", "--csv", "-"},
        {"idemetric-scan", "--model", "kleinberg", "--r", "0", "--sizes", "1024,4096,16384",
         "--pairs", "5000", "--seed", "3"},
        {"route-beacon", "--model", "er", "--n", "20000", "--mean-degree", "8", "--pairs", "5000",
         "--seed", "5"},
        {"route-distributed", "--model", "regular", "--n", "4000", "--seed", "2"},
        {"route-compact", "--model", "ws", "--n", "5000", "--m", "3", "--seed", "2",
         "--trace-from", "1", "--trace-to", "4000"},
        {"pump-check", "--model", "regular", "--n", "4000", "--seed", "9"},
        {"fed-check", "--model", "ws", "--m", "5", "--p", "0.2", "--sizes", "10000,20000"},
        {"generate", "--model", "kleinberg", "--n", "4096", "--r", "1.5", "--seed", "4", "--edges",
         "-"}};
    std::size_t identical = 0;
    for (const auto& base : commands) {
      const std::string first = cli(base);
      bool same = cli(base) == first;
      for (const char* threads : {"2", "4"}) {
        if (base.front() == "generate" || base.front() == "fed-check") continue;
        auto threaded = base;
        threaded.insert(threaded.end(), {"--threads", threads});
        same = same && cli(threaded) == first;
      }
      identical += same;
      if (!same) o.require(false, base.front() + " output differs");
    }
    o.detail << " byte-identical commands=" << identical << "/" << commands.size();
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

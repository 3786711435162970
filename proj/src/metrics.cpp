#include "smallworld/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "smallworld/rng.hpp"

namespace smallworld {
namespace {

// Sizes are integers and eps*n is a product of doubles; compare with a
// relative slack so eps = k/n behaves as the exact rational would.
bool at_least(std::size_t size, double target) {
  return static_cast<double>(size) >= target * (1.0 - 1e-12);
}
bool at_most(std::size_t size, double target) {
  return static_cast<double>(size) <= target * (1.0 + 1e-12);
}

// Sources hit this many times get one full BFS instead of pairwise searches.
constexpr std::size_t kFullBfsThreshold = 4;

template <typename Fn>
void parallel_blocks(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(count, t * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    if (begin < end) pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

std::vector<std::uint64_t> cumulative_counts(const DistanceHistogram& h) {
  const Dist max_d = h.counts.empty() ? 0 : h.counts.rbegin()->first;
  std::vector<std::uint64_t> cum(static_cast<std::size_t>(max_d) + 2, 0);
  for (const auto& [d, c] : h.counts) cum[d + 1] += c;
  std::partial_sum(cum.begin(), cum.end(), cum.begin());
  return cum;  // cum[k] = mass at distances < k
}

Dist median_of(const DistanceHistogram& h) {
  const std::uint64_t finite = h.finite_pairs();
  if (finite == 0) throw std::invalid_argument("histogram has no finite distance");
  const std::uint64_t rank = (finite + 1) / 2;
  std::uint64_t seen = 0;
  for (const auto& [d, c] : h.counts) {
    seen += c;
    if (seen >= rank) return d;
  }
  return h.counts.rbegin()->first;
}

bool non_decreasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] < xs[i - 1]) return false;
  }
  return true;
}

}  // namespace

std::uint64_t size_seed(std::uint64_t seed, std::size_t index) {
  return mix64(seed ^ mix64(0x5ca1ab1eULL + index));
}

std::uint64_t default_num_pairs(NodeId n) {
  return std::max<std::uint64_t>(
      10000, static_cast<std::uint64_t>(std::ceil(20.0 * std::sqrt(static_cast<double>(n)))));
}

DistanceHistogram sample_pair_distances(const Graph& g, std::uint64_t num_pairs,
                                        std::uint64_t seed,
                                        const SamplingOptions& options) {
  if (num_pairs == 0) throw std::invalid_argument("num_pairs must be >= 1");
  std::vector<NodeId> pool;
  if (options.scope == PairScope::kGiant) {
    const auto info = largest_component(g);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      if (info.component_id[u] == info.largest_id) pool.push_back(u);
    }
  } else {
    pool.resize(g.num_nodes());
    std::iota(pool.begin(), pool.end(), NodeId{0});
  }
  if (pool.size() < 2) throw std::invalid_argument("need at least two nodes to sample pairs");

  Rng rng(seed);
  std::vector<Edge> pairs(num_pairs);
  for (auto& [u, v] : pairs) {
    const auto i = rng.uniform_below(pool.size());
    auto j = rng.uniform_below(pool.size() - 1);
    if (j >= i) ++j;
    u = pool[i];
    v = pool[j];
  }

  // Group pair indices by source.
  std::vector<std::uint64_t> order(num_pairs);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    return pairs[a].first < pairs[b].first;
  });
  std::vector<std::size_t> group_start{0};
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (pairs[order[i]].first != pairs[order[i - 1]].first) group_start.push_back(i);
  }
  group_start.push_back(order.size());

  std::vector<Dist> dist(num_pairs, kUnreachable);
  parallel_blocks(group_start.size() - 1, options.threads,
                  [&](std::size_t begin, std::size_t end) {
                    DistanceQuery query(g);
                    for (std::size_t grp = begin; grp < end; ++grp) {
                      const std::size_t lo = group_start[grp];
                      const std::size_t hi = group_start[grp + 1];
                      const NodeId source = pairs[order[lo]].first;
                      if (hi - lo >= kFullBfsThreshold) {
                        const auto bfs = bfs_distances(g, source);
                        for (std::size_t k = lo; k < hi; ++k) {
                          dist[order[k]] = bfs.dist[pairs[order[k]].second];
                        }
                      } else {
                        for (std::size_t k = lo; k < hi; ++k) {
                          dist[order[k]] = query(source, pairs[order[k]].second);
                        }
                      }
                    }
                  });

  DistanceHistogram h;
  h.scope = options.scope;
  h.sampled_pairs = num_pairs;
  for (Dist d : dist) {
    if (d == kUnreachable) {
      ++h.unreachable;
    } else {
      ++h.counts[d];
    }
  }
  return h;
}

DistanceHistogram all_pair_distances(const Graph& g) {
  DistanceHistogram h;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto bfs = bfs_distances(g, u);
    for (NodeId v = g.directed() ? 0 : u + 1; v < g.num_nodes(); ++v) {
      if (v == u) continue;
      ++h.sampled_pairs;
      if (bfs.dist[v] == kUnreachable) {
        ++h.unreachable;
      } else {
        ++h.counts[bfs.dist[v]];
      }
    }
  }
  return h;
}

double relative_mass(const DistanceHistogram& h, double eps) {
  const double median = median_of(h);
  const double lo = (1.0 - eps) * median - 1e-9;
  const double hi = (1.0 + eps) * median + 1e-9;
  std::uint64_t inside = 0;
  for (const auto& [d, c] : h.counts) {
    if (d >= lo && d <= hi) inside += c;
  }
  return static_cast<double>(inside) / static_cast<double>(h.finite_pairs());
}

WindowMass window_mass(const DistanceHistogram& h, Dist b) {
  if (h.finite_pairs() == 0) throw std::invalid_argument("histogram has no finite distance");
  const auto cum = cumulative_counts(h);
  const Dist min_d = h.counts.begin()->first;
  const Dist max_d = h.counts.rbegin()->first;
  WindowMass best{b, -1.0, min_d};
  for (Dist c = min_d; c <= max_d; ++c) {
    const std::size_t lo = c >= b ? c - b : 0;
    const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(c) + b, max_d);
    const double mass = static_cast<double>(cum[hi + 1] - cum[lo]) /
                        static_cast<double>(h.finite_pairs());
    if (mass > best.mass) best = {b, mass, c};
  }
  return best;
}

ConcentrationReport concentration_report(const DistanceHistogram& h,
                                         const std::vector<double>& eps_list,
                                         const std::vector<Dist>& b_list) {
  ConcentrationReport report;
  report.median_distance = median_of(h);
  report.unreachable_fraction =
      static_cast<double>(h.unreachable) / static_cast<double>(h.sampled_pairs);
  for (double eps : eps_list) report.relative.push_back({eps, relative_mass(h, eps)});
  for (Dist b : b_list) report.window.push_back(window_mass(h, b));
  return report;
}

std::string to_string(IdemetricVerdict v) {
  switch (v) {
    case IdemetricVerdict::kSiConsistent:
      return "SI-CONSISTENT";
    case IdemetricVerdict::kIdemetricConsistent:
      return "IDEMETRIC-CONSISTENT";
    case IdemetricVerdict::kNotConsistent:
      break;
  }
  return "NOT-CONSISTENT";
}

IdemetricScan summarize_scan(std::vector<ScanPoint> points, const ScanOptions& options) {
  IdemetricScan scan;
  scan.points = std::move(points);
  if (scan.points.empty()) return scan;

  bool idemetric = true;
  for (std::size_t e = 0; e < options.eps_list.size(); ++e) {
    std::vector<double> series;
    for (const auto& p : scan.points) series.push_back(p.report.relative[e].mass);
    idemetric = idemetric && non_decreasing(series);
  }
  // Unreachable pairs count against concentration: the finite fraction must
  // approach 1, so at the largest size it has to exceed 1 - min(eps).
  const double min_eps = options.eps_list.empty()
                             ? 0.0
                             : *std::min_element(options.eps_list.begin(),
                                                 options.eps_list.end());
  idemetric = idemetric && scan.points.back().report.unreachable_fraction < min_eps;

  if (idemetric) {
    scan.verdict = IdemetricVerdict::kIdemetricConsistent;
    for (std::size_t k = 0; k < options.b_list.size(); ++k) {
      std::vector<double> series;
      for (const auto& p : scan.points) series.push_back(p.report.window[k].mass);
      if (non_decreasing(series) &&
          (!scan.si_window || options.b_list[k] < *scan.si_window)) {
        scan.si_window = options.b_list[k];
      }
    }
    if (scan.si_window) scan.verdict = IdemetricVerdict::kSiConsistent;
  }
  return scan;
}

IdemetricScan idemetric_scan(const ModelSpec& family, const std::vector<NodeId>& sizes,
                             std::uint64_t num_pairs, const ScanOptions& options) {
  if (sizes.size() < 3) throw std::invalid_argument("idemetric scan needs >= 3 sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("sizes must be increasing");
  }
  std::vector<ScanPoint> points;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    ModelSpec spec = with_size(family, sizes[i]);
    spec.seed = size_seed(family.seed, i);
    const Graph g = generate(spec).graph;
    ScanPoint point;
    point.n = sizes[i];
    point.seed = spec.seed;
    point.histogram = sample_pair_distances(g, num_pairs, mix64(spec.seed + 1), options.sampling);
    point.report = concentration_report(point.histogram, options.eps_list, options.b_list);
    points.push_back(std::move(point));
  }
  return summarize_scan(std::move(points), options);
}

PumpCenterResult pump_center(const BallProfile& profile, NodeId n, double eps,
                             double alpha_threshold) {
  PumpCenterResult result;
  const double low = eps * n;
  const double high = (1.0 - eps) * n;
  result.big_ball = at_least(profile.sizes.back(), low);
  for (std::size_t r = 0; r < profile.sizes.size(); ++r) {
    const std::size_t size = profile.sizes[r];
    if (!at_least(size, low) || !at_most(size, high)) continue;
    const double ratio =
        static_cast<double>(profile.boundary_edges[r]) / static_cast<double>(size);
    result.min_ratio = result.min_ratio ? std::min(*result.min_ratio, ratio) : ratio;
    if (ratio < alpha_threshold) result.expands = false;
  }
  return result;
}

PumpReport pump_check(const Graph& g, double eps, std::size_t num_centers,
                      double alpha_threshold, std::uint64_t seed) {
  if (g.directed()) throw std::invalid_argument("pump_check requires an undirected graph");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must be in (0, 1/2)");
  if (num_centers == 0) throw std::invalid_argument("num_centers must be >= 1");
  PumpReport report;
  report.eps = eps;
  report.alpha_threshold = alpha_threshold;
  report.sampled_centers = num_centers;
  Rng rng(seed);
  for (std::size_t i = 0; i < num_centers; ++i) {
    const auto u = static_cast<NodeId>(rng.uniform_below(g.num_nodes()));
    const auto c = pump_center(ball_profile(g, u), g.num_nodes(), eps, alpha_threshold);
    if (!c.big_ball) ++report.fail_no_big_ball;
    if (c.big_ball && c.expands) ++report.passed;
    if (c.min_ratio) {
      report.ratio_floor =
          report.ratio_floor ? std::min(*report.ratio_floor, *c.min_ratio) : *c.min_ratio;
    }
  }
  report.pass_fraction =
      static_cast<double>(report.passed) / static_cast<double>(num_centers);
  return report;
}

RuValue r_u(const Graph& g, NodeId u, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must be in (0, 1]");
  RuValue out{u, eps, std::nullopt};
  const auto profile = ball_profile(g, u);
  for (std::size_t r = 0; r < profile.sizes.size(); ++r) {
    if (at_least(profile.sizes[r], eps * g.num_nodes())) {
      out.r = static_cast<Dist>(r);
      break;
    }
  }
  return out;
}

UsReport us_proxy(const Graph& g, double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must be in (0, 1]");
  const NodeId n = g.num_nodes();
  std::vector<std::size_t> degree(n);
  for (NodeId u = 0; u < n; ++u) {
    degree[u] = g.out_degree(u) + (g.directed() ? g.in_degree(u) : 0);
  }
  const double total =
      static_cast<double>(std::accumulate(degree.begin(), degree.end(), std::size_t{0}));
  if (total == 0.0) throw std::invalid_argument("us_proxy needs a graph with edges");
  UsReport report;
  report.mu = mu;
  report.top_nodes = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::ceil(mu * n * (1.0 - 1e-12))));
  std::partial_sort(degree.begin(), degree.begin() + static_cast<std::ptrdiff_t>(report.top_nodes),
                    degree.end(), std::greater<>());
  const auto top = std::accumulate(degree.begin(),
                                   degree.begin() + static_cast<std::ptrdiff_t>(report.top_nodes),
                                   std::size_t{0});
  report.top_degree_mass = static_cast<double>(top) / total;
  return report;
}

DegreeLaw empirical_degree_law(const Graph& g) {
  const auto hist = degree_histogram(g).total;
  const std::size_t max_d = hist.empty() ? 0 : hist.rbegin()->first;
  DegreeLaw law = DegreeLaw::Zero(static_cast<Eigen::Index>(max_d + 1));
  for (const auto& [d, c] : hist) law(static_cast<Eigen::Index>(d)) = static_cast<double>(c);
  return law / static_cast<double>(g.num_nodes());
}

double law_mean(const DegreeLaw& p) {
  return (p * DegreeLaw::LinSpaced(p.size(), 0.0, static_cast<double>(p.size() - 1))).sum();
}

double total_variation(const DegreeLaw& a, const DegreeLaw& b) {
  const Eigen::Index size = std::max(a.size(), b.size());
  DegreeLaw pa = DegreeLaw::Zero(size);
  DegreeLaw pb = DegreeLaw::Zero(size);
  pa.head(a.size()) = a;
  pb.head(b.size()) = b;
  return 0.5 * (pa - pb).abs().sum();
}

DegreeLaw poisson_law(double mean, std::size_t max_degree) {
  DegreeLaw p(static_cast<Eigen::Index>(max_degree + 1));
  p(0) = std::exp(-mean);
  for (Eigen::Index k = 1; k < p.size(); ++k) p(k) = p(k - 1) * mean / static_cast<double>(k);
  return p;
}

DegreeLaw binomial_law(std::size_t trials, double p) {
  DegreeLaw law = DegreeLaw::Zero(static_cast<Eigen::Index>(trials + 1));
  for (std::size_t k = 0; k <= trials; ++k) {
    const double log_choose = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) -
                              std::lgamma(trials - k + 1.0);
    law(static_cast<Eigen::Index>(k)) =
        std::exp(log_choose) * std::pow(p, static_cast<double>(k)) *
        std::pow(1.0 - p, static_cast<double>(trials - k));
  }
  return law;
}

DegreeLaw convolve(const DegreeLaw& a, const DegreeLaw& b) {
  DegreeLaw out = DegreeLaw::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i, b.size()) += a(i) * b;
  }
  return out;
}

DegreeLaw ws_degree_law(NodeId m, double p_rewire, std::size_t max_degree) {
  DegreeLaw shift = DegreeLaw::Zero(m + 1);
  shift(m) = 1.0;
  const std::size_t poisson_support = max_degree > 2ull * m ? max_degree - 2ull * m : 1;
  DegreeLaw law = convolve(convolve(shift, binomial_law(m, 1.0 - p_rewire)),
                           poisson_law(m * p_rewire, poisson_support));
  return law.head(std::min<Eigen::Index>(law.size(), static_cast<Eigen::Index>(max_degree + 1)));
}

FedReport fed_check(const ModelSpec& family, const std::vector<NodeId>& sizes) {
  if (sizes.size() < 2) throw std::invalid_argument("fed_check needs >= 2 sizes");
  FedReport report;
  if (std::holds_alternative<WattsStrogatz>(family.model)) {
    report.reference = "ws-analytic";
  } else if (std::holds_alternative<ErdosRenyi>(family.model)) {
    report.reference = "poisson";
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    ModelSpec spec = with_size(family, sizes[i]);
    spec.seed = size_seed(family.seed, i);
    const Graph g = generate(spec).graph;
    FedPoint point;
    point.n = sizes[i];
    point.law = empirical_degree_law(g);
    point.mean = law_mean(point.law);
    // Reference support reaches well past the empirical maximum so the
    // truncated tail is negligible.
    const std::size_t support = static_cast<std::size_t>(point.law.size()) + 64;
    if (const auto* ws = std::get_if<WattsStrogatz>(&spec.model)) {
      point.tv_to_reference =
          total_variation(point.law, ws_degree_law(ws->m, ws->p_rewire, support));
    } else if (const auto* er = std::get_if<ErdosRenyi>(&spec.model)) {
      point.tv_to_reference = total_variation(point.law, poisson_law(er->mean_degree, support));
    }
    report.points.push_back(std::move(point));
  }
  for (std::size_t i = 1; i < report.points.size(); ++i) {
    report.tv_distance_successive.push_back(
        total_variation(report.points[i - 1].law, report.points[i].law));
    report.mean_gap.push_back(std::abs(report.points[i - 1].mean - report.points[i].mean));
  }
  return report;
}

}  // namespace smallworld

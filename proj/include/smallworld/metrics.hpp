#ifndef SMALLWORLD_METRICS_HPP
#define SMALLWORLD_METRICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "smallworld/generators.hpp"
#include "smallworld/graph.hpp"

namespace smallworld {

enum class PairScope { kAll, kGiant };

struct DistanceHistogram {
  std::map<Dist, std::uint64_t> counts;  // finite distances only
  std::uint64_t sampled_pairs = 0;
  std::uint64_t unreachable = 0;
  PairScope scope = PairScope::kAll;

  std::uint64_t finite_pairs() const { return sampled_pairs - unreachable; }
};

struct SamplingOptions {
  PairScope scope = PairScope::kAll;
  unsigned threads = 1;
};

/// Ordered pairs (u, v), u != v, drawn uniformly with replacement; d(u, v)
/// is the forward hop distance. With kGiant both endpoints are drawn from the
/// largest (weakly connected) component.
DistanceHistogram sample_pair_distances(const Graph& g, std::uint64_t num_pairs,
                                        std::uint64_t seed,
                                        const SamplingOptions& options = {});

/// Every ordered pair for directed graphs, every unordered pair otherwise.
DistanceHistogram all_pair_distances(const Graph& g);

/// Default pair budget: max(10^4, 20 sqrt(n)).
std::uint64_t default_num_pairs(NodeId n);

struct WindowMass {
  Dist b = 0;
  double mass = 0.0;
  Dist center = 0;
};

struct RelativeMass {
  double eps = 0.0;
  double mass = 0.0;
};

struct ConcentrationReport {
  Dist median_distance = 0;
  double unreachable_fraction = 0.0;
  std::vector<RelativeMass> relative;
  std::vector<WindowMass> window;
};

/// Fractions are taken over finite distances. Throws std::invalid_argument if
/// the histogram has no finite distance.
ConcentrationReport concentration_report(const DistanceHistogram& h,
                                         const std::vector<double>& eps_list,
                                         const std::vector<Dist>& b_list);

/// Fraction of finite mass in [(1-eps) median, (1+eps) median].
double relative_mass(const DistanceHistogram& h, double eps);
/// max over integer c of the finite mass in [c-b, c+b]; ties go to smallest c.
WindowMass window_mass(const DistanceHistogram& h, Dist b);

enum class IdemetricVerdict { kNotConsistent, kIdemetricConsistent, kSiConsistent };
std::string to_string(IdemetricVerdict v);

struct ScanPoint {
  NodeId n = 0;
  std::uint64_t seed = 0;
  DistanceHistogram histogram;
  ConcentrationReport report;
};

struct IdemetricScan {
  std::vector<ScanPoint> points;
  IdemetricVerdict verdict = IdemetricVerdict::kNotConsistent;
  std::optional<Dist> si_window;  // smallest b whose window mass is non-decreasing
};

struct ScanOptions {
  std::vector<double> eps_list{0.05, 0.1, 0.2};
  std::vector<Dist> b_list{1, 2, 3};
  SamplingOptions sampling{};
};

/// Generates the model at each size (seed of size i derived from
/// family.seed and i), samples pair distances and summarizes the trend.
/// IDEMETRIC-CONSISTENT: relative mass non-decreasing in n for every eps and
/// unreachable fraction at the largest size below min(eps). SI-CONSISTENT:
/// additionally some b has window mass non-decreasing in n.
IdemetricScan idemetric_scan(const ModelSpec& family, const std::vector<NodeId>& sizes,
                             std::uint64_t num_pairs, const ScanOptions& options = {});
/// Same trend rule over already-sampled points.
IdemetricScan summarize_scan(std::vector<ScanPoint> points, const ScanOptions& options);

struct PumpReport {
  double eps = 0.0;
  double alpha_threshold = 0.0;
  std::size_t sampled_centers = 0;
  /// min e(B,~B)/|B| over sampled centers and radii with eps n <= |B| <= (1-eps) n;
  /// nullopt when no sampled ball landed in that window.
  std::optional<double> ratio_floor;
  std::size_t fail_no_big_ball = 0;
  std::size_t passed = 0;
  double pass_fraction = 0.0;
};

struct PumpCenterResult {
  bool big_ball = false;             // clause (i)
  bool expands = true;               // clause (ii)
  std::optional<double> min_ratio;   // over the qualifying radii
};

/// Evaluates both clauses for one center from its ball profile.
PumpCenterResult pump_center(const BallProfile& profile, NodeId n, double eps,
                             double alpha_threshold);

/// Centers are sampled uniformly with replacement. Throws on directed input or
/// eps outside (0, 1/2).
PumpReport pump_check(const Graph& g, double eps, std::size_t num_centers,
                      double alpha_threshold, std::uint64_t seed);

struct RuValue {
  NodeId u = 0;
  double eps = 0.0;
  std::optional<Dist> r;  // nullopt: reachable set smaller than eps n
};

RuValue r_u(const Graph& g, NodeId u, double eps);

struct UsReport {
  double mu = 0.0;
  std::size_t top_nodes = 0;  // ceil(mu n)
  double top_degree_mass = 0.0;
};

/// Share of the total degree held by the ceil(mu n) highest-degree nodes.
UsReport us_proxy(const Graph& g, double mu);

/// Probability vector indexed by degree.
using DegreeLaw = Eigen::ArrayXd;

DegreeLaw empirical_degree_law(const Graph& g);
double law_mean(const DegreeLaw& p);
/// Total variation distance; the shorter vector is zero-padded.
double total_variation(const DegreeLaw& a, const DegreeLaw& b);

DegreeLaw poisson_law(double mean, std::size_t max_degree);
DegreeLaw binomial_law(std::size_t trials, double p);
DegreeLaw convolve(const DegreeLaw& a, const DegreeLaw& b);
/// Limit degree law of Watts-Strogatz: m + Bin(m, 1-p) + Poisson(m p).
DegreeLaw ws_degree_law(NodeId m, double p_rewire, std::size_t max_degree);

struct FedPoint {
  NodeId n = 0;
  DegreeLaw law;
  double mean = 0.0;
  std::optional<double> tv_to_reference;
};

struct FedReport {
  std::vector<FedPoint> points;
  std::vector<double> tv_distance_successive;
  std::vector<double> mean_gap;
  std::string reference;  // "ws-analytic", "poisson", or empty
};

/// WS families are compared against ws_degree_law, ER against Poisson(mean).
FedReport fed_check(const ModelSpec& family, const std::vector<NodeId>& sizes);

/// Seed used for the i-th size of a scan over a family.
std::uint64_t size_seed(std::uint64_t seed, std::size_t index);

}  // namespace smallworld

#endif  // SMALLWORLD_METRICS_HPP

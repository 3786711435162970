#include "smallworld/io.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace smallworld {
namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Parses a non-negative id that must fit below kNoNode.
bool parse_id(std::string_view token, std::uint64_t& value) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc{} && ptr == end;
}

json law_json(const DegreeLaw& law) {
  json out = json::object();
  for (Eigen::Index d = 0; d < law.size(); ++d) {
    if (law(d) > 0.0) out[std::to_string(d)] = law(d);
  }
  return out;
}

json optional_number(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

}  // namespace

Graph parse_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::vector<Edge> edges;
  std::optional<std::uint64_t> declared_n;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with("n=")) {
      std::uint64_t n = 0;
      if (!parse_id(trim(line.substr(2)), n) || n >= kNoNode) {
        throw ParseError(line_no, "malformed node count header");
      }
      declared_n = n;
      continue;
    }
    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) throw ParseError(line_no, "expected `u v`");
    const auto first = line.substr(0, split);
    const auto second = trim(line.substr(split));
    if (second.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError(line_no, "expected exactly two ids");
    }
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!parse_id(first, u) || !parse_id(second, v)) {
      throw ParseError(line_no, "ids must be non-negative integers");
    }
    if (u >= kNoNode - 1 || v >= kNoNode - 1) throw ParseError(line_no, "node id overflow");
    if (u == v && !options.allow_self_loops) throw ParseError(line_no, "self-loop not allowed");
    if (declared_n && (u >= *declared_n || v >= *declared_n)) {
      throw ParseError(line_no, "id exceeds declared n");
    }
    max_id = std::max({max_id, u, v});
    any = true;
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  const std::uint64_t n = declared_n ? *declared_n : (any ? max_id + 1 : 0);
  if (declared_n && any && max_id >= n) throw DataError("id exceeds declared n");
  return build_graph(static_cast<NodeId>(n), options.directed, edges, options.allow_self_loops);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  if (g.directed()) out << "# directed\n";
  NodeId max_id = 0;
  bool any = false;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.out_neighbors(u)) {
      if (!g.directed() && v < u) continue;
      max_id = std::max({max_id, u, v});
      any = true;
    }
  }
  if (g.num_nodes() != (any ? max_id + 1 : 0)) out << "n=" << g.num_nodes() << '\n';
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.out_neighbors(u)) {
      if (!g.directed() && v < u) continue;
      out << u << ' ' << v << '\n';
    }
  }
  if (!out) throw DataError("edge list write failed");
}

void write_histogram_csv(const DistanceHistogram& h, std::ostream& out) {
  out << "distance,fraction\n";
  const auto finite = static_cast<double>(h.finite_pairs());
  std::ostringstream row;
  row << std::setprecision(17);
  for (const auto& [d, c] : h.counts) {
    row.str("");
    row << d << ',' << static_cast<double>(c) / finite << '\n';
    out << row.str();
  }
  if (!out) throw DataError("histogram write failed");
}

json to_json(const ModelSpec& spec) {
  json j;
  j["model"] = model_name(spec);
  std::visit(
      [&j](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        j["n"] = m.n;
        if constexpr (std::is_same_v<T, ErdosRenyi>) {
          j["mean_degree"] = m.mean_degree;
        } else if constexpr (std::is_same_v<T, WattsStrogatz>) {
          j["m"] = m.m;
          j["p_rewire"] = m.p_rewire;
        } else if constexpr (std::is_same_v<T, Kleinberg>) {
          j["r"] = m.r;
          j["p_local"] = m.p_local;
          j["q_long"] = m.q_long;
        } else if constexpr (std::is_same_v<T, BarabasiAlbert>) {
          j["m_attach"] = m.m_attach;
        } else if constexpr (std::is_same_v<T, Configuration>) {
          j["tau"] = m.tau;
        } else {
          j["degree"] = m.degree;
        }
      },
      spec.model);
  j["seed"] = spec.seed;
  return j;
}

json to_json(const DistanceHistogram& h) {
  json counts = json::object();
  for (const auto& [d, c] : h.counts) counts[std::to_string(d)] = c;
  return {{"scope", h.scope == PairScope::kGiant ? "giant" : "all"},
          {"sampled_pairs", h.sampled_pairs},
          {"unreachable", h.unreachable},
          {"counts", counts}};
}

json to_json(const ConcentrationReport& r) {
  json relative = json::array();
  for (const auto& x : r.relative) relative.push_back({{"eps", x.eps}, {"mass", x.mass}});
  json window = json::array();
  for (const auto& w : r.window) {
    window.push_back({{"b", w.b}, {"mass", w.mass}, {"center", w.center}});
  }
  return {{"median_distance", r.median_distance},
          {"unreachable_fraction", r.unreachable_fraction},
          {"relative_mass", relative},
          {"window_mass", window}};
}

json to_json(const IdemetricScan& scan) {
  json points = json::array();
  for (const auto& p : scan.points) {
    points.push_back({{"n", p.n},
                      {"seed", p.seed},
                      {"histogram", to_json(p.histogram)},
                      {"concentration", to_json(p.report)}});
  }
  return {{"points", points},
          {"verdict", to_string(scan.verdict)},
          {"si_window", scan.si_window ? json(*scan.si_window) : json(nullptr)}};
}

json to_json(const PumpReport& r) {
  return {{"eps", r.eps},
          {"alpha_threshold", r.alpha_threshold},
          {"sampled_centers", r.sampled_centers},
          {"ratio_floor", optional_number(r.ratio_floor)},
          {"fail_no_big_ball", r.fail_no_big_ball},
          {"passed", r.passed},
          {"pass_fraction", r.pass_fraction}};
}

json to_json(const UsReport& r) {
  return {{"mu", r.mu}, {"top_nodes", r.top_nodes}, {"top_degree_mass", r.top_degree_mass}};
}

json to_json(const FedReport& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    points.push_back({{"n", p.n},
                      {"mean", p.mean},
                      {"tv_to_reference", optional_number(p.tv_to_reference)},
                      {"law", law_json(p.law)}});
  }
  return {{"reference", r.reference.empty() ? json(nullptr) : json(r.reference)},
          {"points", points},
          {"tv_distance_successive", r.tv_distance_successive},
          {"mean_gap", r.mean_gap}};
}

json to_json(const AlphaEstimate& a) {
  return {{"alpha", a.alpha},
          {"power_iteration", a.power_iteration},
          {"bisection", a.bisection},
          {"residual", a.residual},
          {"iterations", a.iterations}};
}

json to_json(const BoundCheck& b) {
  return {{"n", b.n},           {"r", b.r},         {"normalizer", b.normalizer},
          {"max_distance", b.max_distance}, {"min_prob", b.min_prob}, {"bound", b.bound},
          {"holds", b.holds}};
}

json to_json(const StretchReport& r) {
  return {{"sampled_pairs", r.sampled_pairs},
          {"routed_pairs", r.samples.size()},
          {"unreachable", r.unreachable},
          {"unroutable", r.unroutable},
          {"quantiles",
           {{"0.5", r.quantile(0.5)},
            {"0.9", r.quantile(0.9)},
            {"0.99", r.quantile(0.99)},
            {"1.0", r.quantile(1.0)}}}};
}

json to_json(const DistributedReport& r) {
  return {{"beacons", r.beacons},
          {"converged", r.converged},
          {"rounds_to_fixpoint", r.rounds_to_fixpoint},
          {"rounds_executed", r.rounds_executed},
          {"messages_per_round", r.messages_per_round},
          {"bits_per_round", r.bits_per_round},
          {"matches_bfs", r.matches_bfs}};
}

json to_json(const MemoryAccount& m) {
  std::uint64_t max_bits = 0;
  std::uint64_t min_bits = m.per_node_bits.empty() ? 0 : m.per_node_bits.front();
  for (auto b : m.per_node_bits) {
    max_bits = std::max(max_bits, b);
    min_bits = std::min(min_bits, b);
  }
  return {{"id_bits", m.id_bits},
          {"port_bits", m.port_bits},
          {"total_bits", m.total_bits},
          {"implied_constant", m.implied_constant},
          {"max_node_bits", max_bits},
          {"min_node_bits", min_bits},
          {"per_node_bits", m.per_node_bits}};
}

json to_json(const TraceResult& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"node", s.node},
                     {"in_port", s.in_port},
                     {"header", s.header.summary()},
                     {"out_port", s.out_port}});
  }
  return {{"delivered", t.delivered}, {"hops", t.hops}, {"steps", steps}};
}

json make_report(const std::string& command, json config, json results) {
  return {{"command", command},
          {"version", kVersion},
          {"schema_version", kSchemaVersion},
          {"config", std::move(config)},
          {"results", std::move(results)}};
}

}  // namespace smallworld

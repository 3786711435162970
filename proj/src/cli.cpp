#include "smallworld/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "smallworld/io.hpp"
#include "smallworld/rng.hpp"

namespace smallworld {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  // graph source
  std::string model;
  std::string input;
  bool directed = false;
  NodeId n = 0;
  double mean_degree = 10.0;
  NodeId m = 5;
  double p = 0.1;
  double r = 2.0;
  NodeId q = 1;
  NodeId p_local = 1;
  double tau = 3.0;
  NodeId degree = 3;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  bool timings = false;

  // sampling and thresholds
  std::optional<std::uint64_t> pairs;
  std::string scope = "all";
  std::vector<double> eps;
  std::vector<Dist> b;
  std::string csv;
  std::vector<NodeId> sizes;
  std::size_t centers = 200;
  double alpha = 0.05;
  std::vector<double> mu;
  int imax = 60;
  std::optional<double> predict_n;
  std::optional<NodeId> beacon;
  bool shortcut = false;
  std::vector<double> thresholds;
  std::optional<NodeId> trace_from;
  std::optional<NodeId> trace_to;
  std::string trace_out;
  std::vector<NodeId> beacons;
  std::optional<double> beacon_prob;
  std::size_t max_rounds = 1000;
  std::string edges;
  std::string canonical;
};

struct Timer {
  Clock::time_point start = Clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
};

ModelSpec model_spec(const Options& o, std::optional<NodeId> n_override = std::nullopt) {
  const NodeId n = n_override.value_or(o.n);
  ModelSpec spec;
  spec.seed = o.seed;
  if (o.model == "er") {
    spec.model = ErdosRenyi{n, o.mean_degree};
  } else if (o.model == "ws") {
    spec.model = WattsStrogatz{n, o.m, o.p};
  } else if (o.model == "kleinberg") {
    spec.model = Kleinberg{n, o.r, o.p_local, o.q};
  } else if (o.model == "ba") {
    spec.model = BarabasiAlbert{n, o.m};
  } else if (o.model == "config") {
    spec.model = Configuration{n, o.tau};
  } else if (o.model == "regular") {
    spec.model = RandomRegular{n, o.degree};
  } else {
    throw UsageError("--model is required (er, ws, kleinberg, ba, config, regular)");
  }
  validate(spec);
  return spec;
}

json stats_json(const GeneratorStats& s) {
  return {{"long_range_trials", s.long_range_trials},
          {"long_range_collapsed", s.long_range_collapsed},
          {"rewired_edges", s.rewired_edges},
          {"discarded_edges", s.discarded_edges},
          {"restarts", s.restarts}};
}

json graph_summary(const Graph& g) {
  const auto comp = largest_component(g);
  const auto hist = degree_histogram(g);
  json degrees = json::object();
  for (const auto& [d, c] : hist.total) degrees[std::to_string(d)] = c;
  return {{"n", g.num_nodes()},
          {"edges", g.num_edges()},
          {"directed", g.directed()},
          {"largest_component_size", comp.largest_size},
          {"largest_component_fraction", comp.largest_fraction},
          {"degree_histogram", degrees}};
}

/// The graph a command works on, plus how it was obtained.
struct Loaded {
  Graph graph;
  json source;
  std::optional<GeneratorStats> stats;
};

Loaded load_graph(const Options& o) {
  if (!o.input.empty() && !o.model.empty()) {
    throw UsageError("--input and --model are mutually exclusive");
  }
  if (!o.input.empty()) {
    std::ifstream in(o.input);
    if (!in) throw DataError("cannot open " + o.input);
    Loaded l{parse_edge_list(in, {o.directed, false}), json::object(), std::nullopt};
    l.source = {{"input", o.input}, {"directed", o.directed}};
    return l;
  }
  const ModelSpec spec = model_spec(o);
  auto gen = generate(spec);
  return {std::move(gen.graph), to_json(spec), gen.stats};
}

/// Sampling randomness is a separate stream from the generator's.
std::uint64_t sampling_seed(std::uint64_t seed) { return mix64(seed + 1); }

PairScope parse_scope(const std::string& s) {
  if (s == "all") return PairScope::kAll;
  if (s == "giant") return PairScope::kGiant;
  throw UsageError("--scope must be all or giant");
}

void require_size(const Options& o) {
  if (o.input.empty() && o.n == 0) throw UsageError("--n is required with --model");
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DataError("cannot open " + path + " for writing");
      out_ = file_.get();
    }
  }
  std::ostream& stream() { return *out_; }
  void finish() {
    out_->flush();
    if (!*out_) throw DataError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

void emit(const Options& o, std::ostream& out, const std::string& command, json config,
          json results, const Timer& timer) {
  json report = make_report(command, std::move(config), std::move(results));
  if (o.timings) report["timings"] = {{"total_ms", timer.ms()}};
  Sink sink(o.out, out);
  sink.stream() << report.dump(2) << '\n';
  sink.finish();
}

json base_config(const Options& o, const json& source) {
  json c = source;
  c["seed"] = o.seed;
  return c;
}

std::vector<double> or_default(std::vector<double> v, std::vector<double> fallback) {
  return v.empty() ? fallback : v;
}

int cmd_generate(const Options& o, std::ostream& out) {
  require_size(o);
  Timer timer;
  const ModelSpec spec = model_spec(o);
  const auto gen = generate(spec);
  if (!o.edges.empty()) {
    Sink sink(o.edges, out);
    write_edge_list(gen.graph, sink.stream());
    sink.finish();
    if (o.edges == "-" && o.out.empty()) return kExitOk;
  }
  json results = graph_summary(gen.graph);
  results["generator"] = stats_json(gen.stats);
  emit(o, out, "generate", to_json(spec), results, timer);
  return kExitOk;
}

int cmd_distances(const Options& o, std::ostream& out) {
  require_size(o);
  Timer timer;
  const auto loaded = load_graph(o);
  const auto& g = loaded.graph;
  const std::uint64_t pairs = o.pairs.value_or(default_num_pairs(g.num_nodes()));
  const auto hist = sample_pair_distances(g, pairs, sampling_seed(o.seed),
                                          {parse_scope(o.scope), o.threads});
  if (!o.csv.empty()) {
    Sink sink(o.csv, out);
    write_histogram_csv(hist, sink.stream());
    sink.finish();
    if (o.csv == "-" && o.out.empty()) return kExitOk;
  }
  const auto eps = or_default(o.eps, {0.05, 0.1, 0.2});
  const std::vector<Dist> b = o.b.empty() ? std::vector<Dist>{1, 2, 3} : o.b;
  json config = base_config(o, loaded.source);
  config["pairs"] = pairs;
  config["sampling_seed"] = sampling_seed(o.seed);
  config["scope"] = o.scope;
  config["eps"] = eps;
  config["b"] = b;
  json results = {{"histogram", to_json(hist)}};
  if (hist.finite_pairs() > 0) results["concentration"] = to_json(concentration_report(hist, eps, b));
  emit(o, out, "distances", config, results, timer);
  return kExitOk;
}

int cmd_idemetric_scan(const Options& o, std::ostream& out) {
  if (o.sizes.size() < 2) throw UsageError("--sizes needs at least two sizes");
  Timer timer;
  const ModelSpec family = model_spec(o, o.sizes.front());
  ScanOptions options;
  options.eps_list = or_default(o.eps, options.eps_list);
  if (!o.b.empty()) options.b_list = o.b;
  options.sampling = {parse_scope(o.scope), o.threads};
  const std::uint64_t pairs = o.pairs.value_or(10000);
  const auto scan = idemetric_scan(family, o.sizes, pairs, options);
  json config = to_json(family);
  config.erase("n");
  config["sizes"] = o.sizes;
  config["pairs"] = pairs;
  config["scope"] = o.scope;
  config["eps"] = options.eps_list;
  config["b"] = options.b_list;
  emit(o, out, "idemetric-scan", config, to_json(scan), timer);
  return kExitOk;
}

int cmd_pump_check(const Options& o, std::ostream& out) {
  require_size(o);
  Timer timer;
  const auto loaded = load_graph(o);
  const double eps = o.eps.empty() ? 0.1 : o.eps.front();
  if (o.eps.size() > 1) throw UsageError("pump-check takes a single --eps");
  const auto report = pump_check(loaded.graph, eps, o.centers, o.alpha, sampling_seed(o.seed));
  json config = base_config(o, loaded.source);
  config["eps"] = eps;
  config["centers"] = o.centers;
  config["alpha"] = o.alpha;
  emit(o, out, "pump-check", config, to_json(report), timer);
  return kExitOk;
}

int cmd_us_check(const Options& o, std::ostream& out) {
  require_size(o);
  Timer timer;
  const auto loaded = load_graph(o);
  const auto mus = or_default(o.mu, {0.01, 0.05, 0.1});
  json results = json::array();
  for (double mu : mus) results.push_back(to_json(us_proxy(loaded.graph, mu)));
  json config = base_config(o, loaded.source);
  config["mu"] = mus;
  emit(o, out, "us-check", config, {{"proxies", results}}, timer);
  return kExitOk;
}

int cmd_fed_check(const Options& o, std::ostream& out) {
  if (o.sizes.empty()) throw UsageError("--sizes is required");
  Timer timer;
  const ModelSpec family = model_spec(o, o.sizes.front());
  const auto report = fed_check(family, o.sizes);
  json config = to_json(family);
  config.erase("n");
  config["sizes"] = o.sizes;
  emit(o, out, "fed-check", config, to_json(report), timer);
  return kExitOk;
}

json rational_json(const BigRational& v) {
  if (boost::multiprecision::denominator(v) == 1) {
    const BigInt num = boost::multiprecision::numerator(v);
    if (num <= std::numeric_limits<std::int64_t>::max()) return num.convert_to<std::int64_t>();
  }
  return v.str();
}

int cmd_predict(const Options& o, std::ostream& out) {
  Timer timer;
  const int p = static_cast<int>(o.p);
  if (static_cast<double>(p) != o.p || p < 1) throw UsageError("--p must be a positive integer");
  if (o.q < 1) throw UsageError("--q must be >= 1");
  if (o.imax < 4) throw UsageError("--imax must be >= 4");
  const int q = static_cast<int>(o.q);
  const auto series = recurrence_c_general(p, q, o.imax);
  const auto estimate = dominant_eigenvalue(companion_matrix<double>(p, q));
  json prefix = json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(10, series.values.size()); ++i) {
    prefix.push_back(rational_json(series.values[i]));
  }
  json results = to_json(estimate);
  results["c_prefix"] = prefix;
  results["ratio_at_imax"] = series.ratios.back();
  results["rho"] = estimate_rho(series, estimate.alpha);
  if (o.predict_n) results["ell"] = predict_ell(*o.predict_n, estimate.alpha);
  json config = {{"p", p}, {"q", q}, {"imax", o.imax}};
  if (o.predict_n) config["n"] = *o.predict_n;
  emit(o, out, "predict", config, results, timer);
  return kExitOk;
}

int cmd_verify_bound(const Options& o, std::ostream& out) {
  if (o.n == 0) throw UsageError("--n is required");
  Timer timer;
  const auto check = verify_longrange_lower_bound(o.n, o.r);
  emit(o, out, "verify-bound", {{"n", o.n}, {"r", o.r}}, to_json(check), timer);
  return kExitOk;
}

NodeId pick_beacon(const Options& o, const Graph& g) {
  if (g.num_nodes() == 0) throw DataError("graph is empty");
  if (o.beacon) {
    if (*o.beacon >= g.num_nodes()) throw UsageError("--beacon out of range");
    return *o.beacon;
  }
  return random_beacon(g, sampling_seed(o.seed));
}

int cmd_route_beacon(const Options& o, std::ostream& out) {
  require_size(o);
  Timer timer;
  const auto loaded = load_graph(o);
  const auto& g = loaded.graph;
  const NodeId beacon = pick_beacon(o, g);
  const auto tables = build_beacon_tables(g, beacon);
  const std::uint64_t pairs = o.pairs.value_or(10000);
  StretchOptions options;
  options.route.drop_common_detour = o.shortcut;
  options.threads = o.threads;
  const auto report = stretch_report(g, tables, pairs, mix64(o.seed + 2), options);
  const auto thresholds = or_default(o.thresholds, {2.0, 2.5, 3.0});
  json fractions = json::array();
  for (double t : thresholds) {
    fractions.push_back({{"threshold", t}, {"fraction", report.fraction_at_most(t)}});
  }
  json results = to_json(report);
  results["beacon"] = beacon;
  results["stretch_at_most"] = fractions;
  json config = base_config(o, loaded.source);
  config["beacon"] = beacon;
  config["pairs"] = pairs;
  config["shortcut"] = o.shortcut;
  config["thresholds"] = thresholds;
  emit(o, out, "route-beacon", config, results, timer);
  return kExitOk;
}

int cmd_route_compact(const Options& o, std::ostream& out) {
  require_size(o);
  Timer timer;
  const auto loaded = load_graph(o);
  const auto& g = loaded.graph;
  const NodeId beacon = pick_beacon(o, g);
  const auto scheme = compact_scheme_build(g, beacon);
  const auto tables = build_beacon_tables(g, beacon);
  const std::uint64_t pairs = o.pairs.value_or(1000);

  Rng rng(mix64(o.seed + 2));
  std::uint64_t delivered = 0;
  std::uint64_t hop_matches = 0;
  std::size_t max_hops = 0;
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const auto u = static_cast<NodeId>(rng.uniform_below(g.num_nodes()));
    const auto v = static_cast<NodeId>(rng.uniform_below(g.num_nodes()));
    const auto trace = compact_route_sim(scheme, u, v);
    if (!trace.delivered) continue;
    ++delivered;
    max_hops = std::max(max_hops, trace.hops);
    const std::size_t expected = u == v ? 0 : tables.dist_to[u] + tables.dist_from[v];
    if (trace.hops == expected) ++hop_matches;
  }

  if (o.trace_from.has_value() != o.trace_to.has_value()) {
    throw UsageError("--trace-from and --trace-to go together");
  }
  json results = {{"beacon", beacon},
                  {"sampled_pairs", pairs},
                  {"delivered", delivered},
                  {"hops_match_tree", hop_matches},
                  {"max_hops", max_hops},
                  {"memory", to_json(memory_account(scheme))}};
  if (o.trace_from) {
    if (*o.trace_from >= g.num_nodes() || *o.trace_to >= g.num_nodes()) {
      throw UsageError("trace endpoints out of range");
    }
    const auto trace = compact_route_sim(scheme, *o.trace_from, *o.trace_to);
    results["trace"] = to_json(trace);
    if (!o.trace_out.empty()) {
      Sink sink(o.trace_out, out);
      sink.stream() << format_trace(trace);
      sink.finish();
    }
  }
  json config = base_config(o, loaded.source);
  config["beacon"] = beacon;
  config["pairs"] = pairs;
  if (o.trace_from) config["trace"] = {*o.trace_from, *o.trace_to};
  emit(o, out, "route-compact", config, results, timer);
  return kExitOk;
}

int cmd_route_distributed(const Options& o, std::ostream& out) {
  require_size(o);
  Timer timer;
  const auto loaded = load_graph(o);
  DistributedOptions options;
  options.beacons = o.beacons;
  options.beacon_probability = o.beacon_prob;
  options.max_rounds = o.max_rounds;
  options.seed = sampling_seed(o.seed);
  for (NodeId b : options.beacons) {
    if (b >= loaded.graph.num_nodes()) throw UsageError("--beacons entry out of range");
  }
  const auto report = distributed_beacon_sim(loaded.graph, options);
  json config = base_config(o, loaded.source);
  config["beacons"] = o.beacons;
  config["beacon_prob"] = o.beacon_prob ? json(*o.beacon_prob) : json(nullptr);
  config["max_rounds"] = o.max_rounds;
  emit(o, out, "route-distributed", config, to_json(report), timer);
  return kExitOk;
}

int cmd_ingest(const Options& o, std::ostream& out) {
  if (o.input.empty()) throw UsageError("--input is required");
  Timer timer;
  const auto loaded = load_graph(o);
  if (!o.canonical.empty()) {
    Sink sink(o.canonical, out);
    write_edge_list(loaded.graph, sink.stream());
    sink.finish();
    if (o.canonical == "-" && o.out.empty()) return kExitOk;
  }
  emit(o, out, "ingest", loaded.source, graph_summary(loaded.graph), timer);
  return kExitOk;
}

void add_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "Model: er, ws, kleinberg, ba, config, regular")
      ->check(CLI::IsMember({"er", "ws", "kleinberg", "ba", "config", "regular"}));
  cmd->add_option("--input", o.input, "Edge list file instead of a model");
  cmd->add_flag("--directed", o.directed, "Treat --input as directed");
  cmd->add_option("--n", o.n, "Number of nodes");
  cmd->add_option("--mean-degree", o.mean_degree, "ER mean degree");
  cmd->add_option("--m", o.m, "WS half-degree / BA attachment count");
  cmd->add_option("--p", o.p, "WS rewiring probability");
  cmd->add_option("--r", o.r, "Kleinberg exponent");
  cmd->add_option("--local", o.p_local, "Kleinberg local range");
  cmd->add_option("--q", o.q, "Kleinberg long-range contacts per node");
  cmd->add_option("--tau", o.tau, "Configuration-model power-law exponent");
  cmd->add_option("--degree", o.degree, "Random regular degree");
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Write the JSON report here instead of stdout");
  cmd->add_flag("--timings", o.timings, "Add wall-clock timings to the report");
}

void add_sampling(CLI::App* cmd, Options& o) {
  cmd->add_option("--pairs", o.pairs, "Sampled pairs");
  cmd->add_option("--scope", o.scope, "Pair scope: all or giant");
  cmd->add_option("--eps", o.eps, "Relative-window eps values")->delimiter(',');
  cmd->add_option("--b", o.b, "Absolute window half-widths")->delimiter(',');
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Small-world idemetric toolkit", "smallworld"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* generate_cmd = app.add_subcommand("generate", "Generate a model graph");
  add_source(generate_cmd, o);
  add_common(generate_cmd, o);
  generate_cmd->add_option("--edges", o.edges, "Write the edge list here ('-' for stdout)");

  auto* distances_cmd = app.add_subcommand("distances", "Sampled pair-distance histogram");
  add_source(distances_cmd, o);
  add_common(distances_cmd, o);
  add_sampling(distances_cmd, o);
  distances_cmd->add_option("--csv", o.csv, "Write distance,fraction CSV here ('-' for stdout)");

  auto* scan_cmd = app.add_subcommand("idemetric-scan", "Concentration trend over sizes");
  add_source(scan_cmd, o);
  add_common(scan_cmd, o);
  add_sampling(scan_cmd, o);
  scan_cmd->add_option("--sizes", o.sizes, "Graph sizes")->delimiter(',')->required();

  auto* pump_cmd = app.add_subcommand("pump-check", "Ball-expansion check");
  add_source(pump_cmd, o);
  add_common(pump_cmd, o);
  pump_cmd->add_option("--eps", o.eps, "Ball fraction window");
  pump_cmd->add_option("--centers", o.centers, "Sampled centers");
  pump_cmd->add_option("--alpha", o.alpha, "Expansion threshold");

  auto* us_cmd = app.add_subcommand("us-check", "Top-degree mass proxy");
  add_source(us_cmd, o);
  add_common(us_cmd, o);
  us_cmd->add_option("--mu", o.mu, "Top-node fractions")->delimiter(',');

  auto* fed_cmd = app.add_subcommand("fed-check", "Degree-law convergence");
  add_source(fed_cmd, o);
  add_common(fed_cmd, o);
  fed_cmd->add_option("--sizes", o.sizes, "Graph sizes")->delimiter(',')->required();

  auto* predict_cmd = app.add_subcommand("predict", "Kleinberg growth rate and distance scale");
  predict_cmd->add_option("--p", o.p, "Local range p")->default_val(1);
  predict_cmd->add_option("--q", o.q, "Long-range contacts q")->default_val(1);
  predict_cmd->add_option("--imax", o.imax, "Recurrence length");
  predict_cmd->add_option("--n", o.predict_n, "Graph size for the distance scale");
  predict_cmd->add_option("--out", o.out, "Write the JSON report here instead of stdout");
  predict_cmd->add_flag("--timings", o.timings, "Add wall-clock timings to the report");

  auto* bound_cmd = app.add_subcommand("verify-bound", "Long-range probability lower bound");
  bound_cmd->add_option("--n", o.n, "Perfect-square size")->required();
  bound_cmd->add_option("--r", o.r, "Kleinberg exponent")->default_val(2.0);
  bound_cmd->add_option("--out", o.out, "Write the JSON report here instead of stdout");
  bound_cmd->add_flag("--timings", o.timings, "Add wall-clock timings to the report");

  auto* beacon_cmd = app.add_subcommand("route-beacon", "Beacon routing stretch");
  add_source(beacon_cmd, o);
  add_common(beacon_cmd, o);
  beacon_cmd->add_option("--beacon", o.beacon, "Beacon node (default: random)");
  beacon_cmd->add_option("--pairs", o.pairs, "Sampled pairs");
  beacon_cmd->add_flag("--shortcut", o.shortcut, "Cut the detour at the first shared node");
  beacon_cmd->add_option("--thresholds", o.thresholds, "Stretch thresholds")->delimiter(',');

  auto* compact_cmd = app.add_subcommand("route-compact", "Port/header routing simulation");
  add_source(compact_cmd, o);
  add_common(compact_cmd, o);
  compact_cmd->add_option("--beacon", o.beacon, "Beacon node (default: random)");
  compact_cmd->add_option("--pairs", o.pairs, "Sampled pairs");
  compact_cmd->add_option("--trace-from", o.trace_from, "Trace source");
  compact_cmd->add_option("--trace-to", o.trace_to, "Trace destination");
  compact_cmd->add_option("--trace-out", o.trace_out, "Write the text trace here");

  auto* dist_cmd = app.add_subcommand("route-distributed", "Synchronous distance-vector rounds");
  add_source(dist_cmd, o);
  add_common(dist_cmd, o);
  dist_cmd->add_option("--beacons", o.beacons, "Explicit beacons")->delimiter(',');
  dist_cmd->add_option("--beacon-prob", o.beacon_prob, "Beacon probability (default ln n / n)");
  dist_cmd->add_option("--max-rounds", o.max_rounds, "Round cap");

  auto* ingest_cmd = app.add_subcommand("ingest", "Load and summarize an edge list");
  ingest_cmd->add_option("--input", o.input, "Edge list file")->required();
  ingest_cmd->add_flag("--directed", o.directed, "Treat the input as directed");
  ingest_cmd->add_option("--canonical", o.canonical, "Write the canonical edge list here");
  ingest_cmd->add_option("--out", o.out, "Write the JSON report here instead of stdout");
  ingest_cmd->add_flag("--timings", o.timings, "Add wall-clock timings to the report");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate_cmd->parsed()) return cmd_generate(o, out);
    if (distances_cmd->parsed()) return cmd_distances(o, out);
    if (scan_cmd->parsed()) return cmd_idemetric_scan(o, out);
    if (pump_cmd->parsed()) return cmd_pump_check(o, out);
    if (us_cmd->parsed()) return cmd_us_check(o, out);
    if (fed_cmd->parsed()) return cmd_fed_check(o, out);
    if (predict_cmd->parsed()) return cmd_predict(o, out);
    if (bound_cmd->parsed()) return cmd_verify_bound(o, out);
    if (beacon_cmd->parsed()) return cmd_route_beacon(o, out);
    if (compact_cmd->parsed()) return cmd_route_compact(o, out);
    if (dist_cmd->parsed()) return cmd_route_distributed(o, out);
    if (ingest_cmd->parsed()) return cmd_ingest(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace smallworld

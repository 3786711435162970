#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "smallworld/cli.hpp"
#include "smallworld/generators.hpp"
#include "smallworld/io.hpp"

using namespace smallworld;

namespace {

Graph parse(const std::string& text, bool directed = false) {
  std::istringstream in(text);
  return parse_edge_list(in, {directed, false});
}

std::string write(const Graph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "smallworld");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("edge list parsing") {
  CHECK(parse("0 1\n1 2\n") == fixtures::path(3));
  const Graph dup = parse("# comment\n0 1\n0 1\n");
  CHECK(dup.num_edges() == 1);
  CHECK(dup.num_nodes() == 2);
  CHECK(parse("n=5\n0 1\n").num_nodes() == 5);
  CHECK(parse("  0\t1  \r\n\n").num_edges() == 1);
  CHECK(parse("").num_nodes() == 0);

  try {
    parse("0 1\n0 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("0 x\n"), ParseError);
  CHECK_THROWS_AS(parse("0 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("-1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("0 99999999999\n"), ParseError);
  CHECK_THROWS_AS(parse("3 3\n"), ParseError);
  CHECK_THROWS_AS(parse("n=2\n0 5\n"), DataError);
}

TEST_CASE("edge list writing and round trips") {
  CHECK(write(fixtures::path(3)) == "0 1\n1 2\n");
  const std::vector<Edge> arc{{0, 1}};
  const Graph d = build_graph(2, true, arc);
  CHECK(write(d) == "# directed\n0 1\n");
  CHECK(parse(write(d), true) == d);

  const Graph isolated = build_graph(6, false, std::vector<Edge>{{0, 1}});
  CHECK(write(isolated) == "n=6\n0 1\n");
  CHECK(parse(write(isolated)) == isolated);

  const std::vector<ModelSpec> specs{
      {ErdosRenyi{500, 4.0}, 1},        {WattsStrogatz{400, 3, 0.2}, 2},
      {Kleinberg{400, 1.0, 1, 2}, 3},   {Kleinberg{400, 0.0, 1, 1}, 3},
      {BarabasiAlbert{500, 2}, 4},      {Configuration{500, 2.5}, 5},
      {RandomRegular{500, 3}, 6}};
  for (const auto& spec : specs) {
    const Graph g = generate(spec).graph;
    std::istringstream in(write(g));
    CHECK(parse_edge_list(in, {g.directed(), g.allow_self_loops()}) == g);
  }
}

TEST_CASE("histogram csv") {
  DistanceHistogram h;
  h.counts = {{3, 1}, {4, 2}};
  h.sampled_pairs = 4;
  h.unreachable = 1;
  std::ostringstream out;
  write_histogram_csv(h, out);
  CHECK(out.str() == "distance,fraction\n3,0.33333333333333331\n4,0.66666666666666663\n");
}

TEST_CASE("cli predict and verify-bound") {
  const auto p = run({"predict", "--p", "1", "--q", "1"});
  REQUIRE(p.code == kExitOk);
  const auto j = nlohmann::json::parse(p.out);
  CHECK(j["command"] == "predict");
  CHECK(std::abs(j["results"]["alpha"].get<double>() - 3.38298) < 1e-4);
  const std::vector<int> prefix{1, 1, 5, 17, 57};
  for (std::size_t i = 0; i < prefix.size(); ++i) CHECK(j["results"]["c_prefix"][i] == prefix[i]);

  const auto b = run({"verify-bound", "--n", "16", "--r", "2"});
  REQUIRE(b.code == kExitOk);
  const auto jb = nlohmann::json::parse(b.out);
  CHECK(jb["results"]["holds"] == true);
  CHECK(jb["results"]["min_prob"].get<double>() == doctest::Approx(0.0104).epsilon(1e-2));
}

TEST_CASE("cli distances csv is deterministic across threads") {
  const std::vector<std::string> base{"distances", "--model", "ws", "--n", "65536", "--m", "10",
                                      "--p", "0.2", "--pairs", "10000", "--seed", "7", "--csv", "-"};
  const auto a = run(base);
  REQUIRE(a.code == kExitOk);
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const auto b = run(threaded);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("distance,fraction\n", 0) == 0);
  double total = 0.0;
  std::istringstream rows(a.out.substr(a.out.find('\n') + 1));
  std::string line;
  while (std::getline(rows, line)) total += std::stod(line.substr(line.find(',') + 1));
  CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"predict", "--nope"}).code == kExitUsage);
  CHECK(run({"generate", "--model", "ws", "--n", "10", "--m", "7"}).code == kExitUsage);
  CHECK(run({"generate", "--model", "kleinberg", "--n", "10"}).code == kExitUsage);
  CHECK(run({"ingest", "--input", "/nonexistent/file"}).code == kExitData);
  CHECK(run({"predict", "--help"}).code == kExitOk);
  const auto v = run({"--version"});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find(kVersion) != std::string::npos);
}

TEST_CASE("cli generate emits a canonical edge list") {
  const auto r = run({"generate", "--model", "ws", "--n", "50", "--m", "2", "--p", "0.3",
                      "--seed", "4", "--edges", "-"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == write(gen_watts_strogatz(50, 2, 0.3, 4)));
}

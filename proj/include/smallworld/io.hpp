#ifndef SMALLWORLD_IO_HPP
#define SMALLWORLD_IO_HPP

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "smallworld/analytics.hpp"
#include "smallworld/graph.hpp"
#include "smallworld/metrics.hpp"
#include "smallworld/routing.hpp"

namespace smallworld {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Malformed input data (as opposed to a usage error).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct EdgeListOptions {
  bool directed = false;
  bool allow_self_loops = false;
};

/// `u v` per line, `#` comments, optional `n=<k>` header; otherwise n is the
/// largest id + 1.
Graph parse_edge_list(std::istream& in, const EdgeListOptions& options = {});

/// Canonical form: `# directed` comment for directed graphs, `n=<k>` when
/// isolated trailing nodes would otherwise be lost, then one edge per line
/// (u <= v for undirected) in lexicographic order.
void write_edge_list(const Graph& g, std::ostream& out);

/// `distance,fraction` rows over finite distances.
void write_histogram_csv(const DistanceHistogram& h, std::ostream& out);

nlohmann::ordered_json to_json(const ModelSpec& spec);
nlohmann::ordered_json to_json(const DistanceHistogram& h);
nlohmann::ordered_json to_json(const ConcentrationReport& r);
nlohmann::ordered_json to_json(const IdemetricScan& scan);
nlohmann::ordered_json to_json(const PumpReport& r);
nlohmann::ordered_json to_json(const UsReport& r);
nlohmann::ordered_json to_json(const FedReport& r);
nlohmann::ordered_json to_json(const AlphaEstimate& a);
nlohmann::ordered_json to_json(const BoundCheck& b);
nlohmann::ordered_json to_json(const StretchReport& r);
nlohmann::ordered_json to_json(const DistributedReport& r);
nlohmann::ordered_json to_json(const MemoryAccount& m);
nlohmann::ordered_json to_json(const TraceResult& t);

/// Envelope shared by every CLI report.
nlohmann::ordered_json make_report(const std::string& command,
                                   nlohmann::ordered_json config,
                                   nlohmann::ordered_json results);

}  // namespace smallworld

#endif  // SMALLWORLD_IO_HPP

#ifndef NG_EXPERIMENT_HPP
#define NG_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ng/configuration.hpp"
#include "ng/graph.hpp"
#include "ng/model.hpp"
#include "ng/stats.hpp"

namespace ng {

// Batch-experiment description; mirrors the CLI flags and round-trips
// through JSON (emit(parse(x)) == normalize(x)).
struct ExperimentConfig {
  std::string graph = "complete:10";     // family:size
  double phi_a = 1.0;
  double phi_b = 1.0;
  std::string init = "single-ab:0";      // single-ab:v | single-ab:all | step | custom:...
  std::uint64_t replicates = 1000;
  std::uint64_t seed = 1;
  std::uint64_t max_events = 0;          // 0 = default 1e4 * |E|
  bool strict_timeout = true;            // timeouts count as failures
  std::string out;                       // output path ("" = stdout)
  std::string format = "json";           // csv | json

  FitnessParams params() const { return {phi_a, phi_b}; }

  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

std::uint64_t default_max_events(const Graph& g);

// Builds the initial configuration named by an init spec.  "single-ab:all"
// is rejected here (it enumerates starts; see estimate_invasion).
Configuration make_init(const std::string& spec, const Graph& g);

struct VertexEstimate {
  std::size_t start_vertex;
  EstimateWithCI estimate;
  std::uint64_t timeouts;
};

struct InvasionResult {
  std::vector<VertexEstimate> per_vertex;
  std::size_t min_index = 0;  // start with the smallest point estimate
  bool single_representative = false;  // vertex-transitive shortcut taken

  const VertexEstimate& min_estimate() const { return per_vertex[min_index]; }
};

// Monte Carlo invasion probability: replicates of the process from a single
// bilingual at each start vertex, counting all-A absorptions.  On
// vertex-transitive graphs a single representative start is used.
// Replicates run concurrently; results depend only on (config, seed).
InvasionResult estimate_invasion(const ExperimentConfig& cfg);

struct SweepCell {
  std::string graph;
  std::size_t n;
  double phi;
  std::size_t start_vertex;
  std::uint64_t replicates;
  std::uint64_t successes;
  std::uint64_t timeouts;
  EstimateWithCI estimate;
  std::uint64_t seed;
};

// Cross product of the phi and size grids over one graph family; each cell
// estimated as in estimate_invasion with seeds derived from
// (master seed, cell index, replicate index).
std::vector<SweepCell> sweep(const ExperimentConfig& cfg,
                             const std::string& family,
                             const std::vector<std::size_t>& sizes,
                             const std::vector<double>& phis);

// Fixed column order:
// graph,N,phi,start_vertex,replicates,successes,timeouts,p_hat,ci_low,ci_high,seed
void write_sweep_csv(const std::vector<SweepCell>& cells, std::ostream& out);

// Deterministic float formatting used by all CSV output (17 significant
// digits).
std::string format_double(double x);

}  // namespace ng

#endif  // NG_EXPERIMENT_HPP

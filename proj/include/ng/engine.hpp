#ifndef NG_ENGINE_HPP
#define NG_ENGINE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ng/configuration.hpp"
#include "ng/graph.hpp"
#include "ng/model.hpp"

namespace ng {

struct SimOutcome {
  enum class Kind { AbsorbedA, AbsorbedB, Timeout };
  Kind kind = Kind::Timeout;
  double absorption_time = 0.0;  // simulated time in rate-1 units
  std::uint64_t events_executed = 0;
};

const char* to_string(SimOutcome::Kind kind);

struct TrajectoryRow {
  double t;
  std::size_t n_a;
  std::size_t n_b;
  std::size_t n_ab;
};

struct TrajectoryRecord {
  std::vector<TrajectoryRow> rows;
  void write_csv(std::ostream& out) const;  // header t,n_A,n_B,n_AB
};

struct RunResult {
  SimOutcome outcome;
  Configuration final_config;
  std::optional<TrajectoryRecord> trajectory;
};

// Event-driven run of the naming game on g.  Global event times come from
// the superposition of the per-edge rate-1 clocks (one exponential gap at
// rate |E| plus a uniform edge choice); the conversation mark is drawn from
// the chosen edge's own keyed stream so that coupled copies see identical
// marks per edge.  Deterministic given (g, params, init, seed).
RunResult run(const Graph& g, const FitnessParams& params,
              const Configuration& init, std::uint64_t seed,
              std::uint64_t max_events, std::optional<double> record_stride = {});

struct CouplingReport {
  bool ordered = true;                  // ordering held after every event
  std::uint64_t first_violation = 0;    // event index, valid when !ordered
  std::uint64_t events_executed = 0;
  SimOutcome::Kind upper_kind = SimOutcome::Kind::Timeout;
  SimOutcome::Kind lower_kind = SimOutcome::Kind::Timeout;
};

// Runs two copies from the same per-edge clocks and marks.  `upper` must
// dominate `lower`: lower(z)=A implies upper(z)=A, and upper(z)=B implies
// lower(z)=B.  Throws std::invalid_argument if the initial pair is not
// ordered.  Stops when both copies are absorbed or max_events is reached.
CouplingReport run_coupled(const Graph& g, const FitnessParams& params,
                           const Configuration& upper,
                           const Configuration& lower, std::uint64_t seed,
                           std::uint64_t max_events);

// Infinitesimal drift of a^(n_A - n_B) at the given configuration,
// expressed through the mixed-edge counts.  Nonpositive for every
// configuration when phi >= 3 and max(3/phi, 1/sqrt(phi)) <= a <= 1 (the
// 1/sqrt(phi) part comes from the AB-AB edge term and binds beyond phi = 9).
// Throws std::domain_error unless 0 < a <= 1.
double supermartingale_drift(const Configuration& config, const Graph& g,
                             const FitnessParams& params, double a);

}  // namespace ng

#endif  // NG_ENGINE_HPP

#ifndef NG_COMPLETE_HPP
#define NG_COMPLETE_HPP

#include <cstdint>
#include <vector>

#include "ng/engine.hpp"
#include "ng/model.hpp"
#include "ng/stats.hpp"

namespace ng::complete_graph {

// Population counts on the complete graph; n_a + n_b + n_ab is the number
// of vertices.
struct CountState {
  int n_a = 0;
  int n_b = 0;
  int n_ab = 0;

  int n() const { return n_a + n_b + n_ab; }
  bool absorbed() const { return n_a == n() || n_b == n(); }
  bool operator==(const CountState&) const = default;
};

struct Transition {
  CountState to;
  double rate;
};

// Outgoing rates of the lumped count chain: every mixed pair fires at rate
// one and splits by the pair kernel probabilities.  Absorbing states return
// an empty list.
std::vector<Transition> lumped_rates(const CountState& s,
                                     const FitnessParams& params);

// Probability of ending all-A, for every start state, by direct solution
// of the first-step linear system.
class AbsorptionTable {
 public:
  AbsorptionTable(int n, std::vector<double> values);
  int n() const { return n_; }
  double at(const CountState& s) const;

 private:
  int n_;
  std::vector<double> values_;  // indexed over (n_a, n_ab) pairs
};

inline constexpr int kExactAbsorptionCap = 60;

// Throws std::invalid_argument when N exceeds the cap (state space grows
// as (N+1)(N+2)/2; use Monte Carlo above the cap).
AbsorptionTable exact_absorption(int n, const FitnessParams& params);

// Gillespie realization of the lumped chain; distribution-identical to
// running the full engine on complete(N) from a matching configuration,
// at O(1) work per event.
SimOutcome simulate_lumped(const FitnessParams& params, const CountState& start,
                           std::uint64_t seed, std::uint64_t max_events);

// One run of the dominating birth-death process (per-capita birth rate
// N q_A, death rate N (1 - q_A)) started from a single individual.
struct BirthDeathRun {
  bool extinct = false;  // false means the jump cap was reached (censored)
  std::uint64_t jumps = 0;
  int peak = 1;
};

BirthDeathRun birth_death(int n, const FitnessParams& params,
                          std::uint64_t max_jumps, std::uint64_t seed);

// Frequency of a bilingual-bilingual interaction firing before absorption,
// started from (0, N-1, 1).
EstimateWithCI collision_experiment(int n, const FitnessParams& params,
                                    std::uint64_t replicates,
                                    std::uint64_t seed,
                                    std::uint64_t max_events = 100000000);

}  // namespace ng::complete_graph

#endif  // NG_COMPLETE_HPP

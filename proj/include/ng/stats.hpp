#ifndef NG_STATS_HPP
#define NG_STATS_HPP

#include <cstdint>

namespace ng {

// Monte Carlo point estimate with a 95% Wilson score interval.
struct EstimateWithCI {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
};

// Throws std::invalid_argument when trials == 0.
EstimateWithCI wilson_estimate(std::uint64_t successes, std::uint64_t trials);

}  // namespace ng

#endif  // NG_STATS_HPP

#include "ng/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace ng {

namespace {
// 97.5% normal quantile.
constexpr double kZ95 = 1.959963984540054;
}  // namespace

EstimateWithCI wilson_estimate(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (successes > trials) throw std::invalid_argument("successes > trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {successes, trials, p, std::max(0.0, center - half),
          std::min(1.0, center + half)};
}

}  // namespace ng

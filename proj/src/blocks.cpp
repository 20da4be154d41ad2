#include "ng/blocks.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ng/parallel.hpp"
#include "ng/rng.hpp"

namespace ng::blocks2d {

namespace {

void check_phi(double phi) {
  if (!(phi > 0.0)) throw std::domain_error("phi must be positive");
}

}  // namespace

BlockParams block_params(double phi) {
  check_phi(phi);
  const double t = std::sqrt(phi);
  return {phi, t, {8, 16, 8, 16}, {t, t, t, 3.0 * t}};
}

std::pair<double, double> interaction_rates(double phi) {
  check_phi(phi);
  const double t = std::sqrt(phi);
  return {phi * t / (phi + 3.0), 3.0 * t / (phi + 3.0)};
}

double block_bound(double phi) {
  check_phi(phi);
  const auto [good, bad] = interaction_rates(phi);
  (void)bad;
  return 1.0 - 8.0 * (2.0 + good) * std::exp(-good) -
         216.0 * std::sqrt(phi) / (phi + 3.0);
}

double block_probability_exact(double phi) {
  check_phi(phi);
  const auto [lg, lb] = interaction_rates(phi);
  const double p_x_ge2 = -std::expm1(-lg) - lg * std::exp(-lg);  // P(X >= 2)
  const double p_x_ge1 = -std::expm1(-lg);
  const double p_y_eq0 = std::exp(-lb);
  // Groups: 8 edges with X >= 2; 16 with Y = 0; 8 with X >= 1 and Y = 0;
  // 16 with no bad interaction over a 3T window.
  return std::pow(p_x_ge2, 8) * std::pow(p_y_eq0, 16) *
         std::pow(p_x_ge1 * p_y_eq0, 8) * std::pow(std::exp(-3.0 * lb), 16);
}

double sample_good_event_frequency(double phi, std::uint64_t samples,
                                   std::uint64_t seed) {
  check_phi(phi);
  if (samples == 0) throw std::invalid_argument("samples must be positive");
  const auto [lg, lb] = interaction_rates(phi);

  std::vector<std::uint64_t> hits(std::min<std::uint64_t>(samples, 256), 0);
  parallel_for(hits.size(), [&](std::size_t chunk) {
    const std::uint64_t begin = samples * chunk / hits.size();
    const std::uint64_t end = samples * (chunk + 1) / hits.size();
    rng::Stream stream(rng::derive_seed(seed, 7, chunk), 0);
    std::poisson_distribution<long> good(lg);
    std::poisson_distribution<long> bad(lb);
    std::poisson_distribution<long> bad3(3.0 * lb);
    std::uint64_t local = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      bool ok = true;
      for (int e = 0; ok && e < 8; ++e) ok = good(stream) >= 2;
      for (int e = 0; ok && e < 16; ++e) ok = bad(stream) == 0;
      for (int e = 0; ok && e < 8; ++e) {
        ok = good(stream) >= 1 && bad(stream) == 0;
      }
      for (int e = 0; ok && e < 16; ++e) ok = bad3(stream) == 0;
      if (ok) ++local;
    }
    hits[chunk] = local;
  });
  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(samples);
}

double min_phi_for(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw std::domain_error("eps must be in (0, 1)");
  }
  const double target = 1.0 - eps;
  double lo = 1.0, hi = 1e12;
  if (block_bound(hi) < target) {
    throw std::runtime_error("no phi in range reaches the requested bound");
  }
  if (block_bound(lo) >= target) return lo;
  // The bound rises towards 1 for large phi; bisect in log space.
  while (hi / lo > 1.0 + 1e-3) {
    const double mid = std::sqrt(lo * hi);
    (block_bound(mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace ng::blocks2d

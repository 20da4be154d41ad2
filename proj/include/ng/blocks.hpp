#ifndef NG_BLOCKS_HPP
#define NG_BLOCKS_HPP

#include <array>
#include <cstdint>
#include <utility>

namespace ng::blocks2d {

// Space-time renormalization parameters: blocks of duration 2T with
// T = sqrt(phi), and the four edge groups entering the good event with
// their multiplicities and observation windows.
struct BlockParams {
  double phi;
  double t_window;                              // T = sqrt(phi)
  std::array<int, 4> multiplicities{8, 16, 8, 16};
  std::array<double, 4> window_lengths;         // {T, T, T, 3T}
};

BlockParams block_params(double phi);

// Expected counts of good / bad interactions along one edge per window T:
// lambda_good = q_A T, lambda_bad = (1 - q_A) T.
std::pair<double, double> interaction_rates(double phi);

// Union lower bound on the good-event probability:
// 1 - 8 (2 + l_g) exp(-l_g) - 216 sqrt(phi)/(phi+3).  May be negative
// (vacuous) for moderate phi.
double block_bound(double phi);

// Product-form probability of the good event under independence of the
// Poisson counts across the 48 distinct (edge, window) cells.  Always at
// least block_bound.
double block_probability_exact(double phi);

// Empirical good-event frequency from sampling the 48 Poisson cells.
double sample_good_event_frequency(double phi, std::uint64_t samples,
                                   std::uint64_t seed);

// Smallest phi in [1, 1e12] with block_bound(phi) >= 1 - eps, bisected to
// 1e-3 relative width.  Throws std::domain_error for eps outside (0,1) and
// std::runtime_error when no solution exists in range.
double min_phi_for(double eps);

}  // namespace ng::blocks2d

#endif  // NG_BLOCKS_HPP

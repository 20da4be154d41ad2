#ifndef NG_INTERFACE1D_HPP
#define NG_INTERFACE1D_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "ng/model.hpp"

namespace ng::interface1d {

// One transition of the process seen from the interface: exponential clock
// at `rate`, interface displacement `dx`, next configuration type.
struct DisplacementStep {
  double rate;
  int dx;
  int next;
};

// The 3-state chain of configuration types together with the interface
// displacement attached to every transition.
struct InterfaceModel {
  double r01, r10, r12, r20, r21;  // type-chain rates (self-loops excluded)
  std::array<std::vector<DisplacementStep>, 3> displacement_law;
  std::array<double, 3> pi;     // stationary distribution of the type chain
  std::array<double, 3> drift;  // conditional drift D_j of the interface
  double speed;                 // pi . D, lattice sites per unit time
};

InterfaceModel build_model(const FitnessParams& params);

// pi . D without exposing the full model.
double speed(const FitnessParams& params);

// Largest root of 48 phi^2 - 23 phi - 29: the closed-form invasion
// threshold (23 + sqrt(6097))/96.
double critical_quadratic();

// Root of speed(phi) on [1, 3], bisected to a 1e-10 bracket.
double critical_exact();

struct TrajectorySample {
  double t;
  std::int64_t x;
  int type;
};

struct InterfaceTrajectory {
  std::vector<TrajectorySample> samples;  // kept every record_stride
  std::array<double, 3> occupation{};     // time-weighted type fractions
  std::array<double, 3> occupation_se{};  // batch-means standard errors
  double empirical_speed = 0.0;           // x(t_max) / t_max
  double speed_se = 0.0;
  double t_final = 0.0;
  std::int64_t x_final = 0;
  bool aborted = false;  // lattice run stopped near the window boundary
};

// Direct simulation of the reduced (type, X) chain by competing
// exponentials per the displacement law.
InterfaceTrajectory simulate_interface(const FitnessParams& params,
                                       double t_max, std::uint64_t seed,
                                       double record_stride = 0.0);

// Simulation of the naming game on a moving window of the line, starting
// from the step configuration, with the rightmost-bilingual restriction:
// whenever three bilinguals accumulate right of the interface the outermost
// one flips to B.  The window recenters as the interface moves; cells
// revealed on the left are A and on the right are B, which the restriction
// makes exact.  Throws std::invalid_argument unless window_half_width >= 10
// and t_max > 0.
InterfaceTrajectory simulate_restricted_lattice(const FitnessParams& params,
                                                std::size_t window_half_width,
                                                double t_max,
                                                std::uint64_t seed,
                                                double record_stride = 0.0);

}  // namespace ng::interface1d

#endif  // NG_INTERFACE1D_HPP

#ifndef NG_MEANFIELD_HPP
#define NG_MEANFIELD_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ng/model.hpp"

namespace ng::meanfield {

// Point on the frequency simplex (u_A, u_B, u_AB).
struct State {
  double u_a = 0.0;
  double u_b = 1.0;
  double u_ab = 0.0;

  double simplex_defect() const { return u_a + u_b + u_ab - 1.0; }

  static State vertex_a() { return {1.0, 0.0, 0.0}; }
  static State vertex_b() { return {0.0, 1.0, 0.0}; }
};

struct Derivative {
  double u_a;
  double u_b;
  double u_ab;
};

// Well-mixed dynamics.  The bilingual component is defined as minus the sum
// of the other two, so the derivative components sum to zero exactly.
// Throws std::domain_error when u is off the simplex by more than 1e-6.
Derivative rhs(const State& u, const FitnessParams& params);

// Closed form for d/dt (u_A - u_B); agrees with rhs to rounding error and
// is positive on the interior whenever phi > 3.
double difference_rhs(const State& u, const FitnessParams& params);

// Eigenvalues of the linearization at the all-B vertex:
// (-(phi+1)^-1, 0, (phi-3)/(phi+3)).
std::array<double, 3> jacobian_eB_eigenvalues(const FitnessParams& params);

enum class LimitClass { VertexA, VertexB, Undecided };
const char* to_string(LimitClass c);

struct TrajectoryPoint {
  double t;
  State u;
};

struct IntegrationResult {
  std::vector<TrajectoryPoint> trajectory;
  LimitClass limit = LimitClass::Undecided;
  // header t,u_A,u_B,u_AB
  void write_csv(std::ostream& out) const;
};

// Fixed-step RK4; renormalizes onto the simplex when drift exceeds 1e-12;
// classifies the limit once within 1e-6 of a vertex.  record_stride controls
// trajectory density (rows kept every record_stride time units; 0 keeps all).
IntegrationResult integrate(const State& u0, const FitnessParams& params,
                            double dt = 1e-3, double t_max = 200.0,
                            double record_stride = 0.1);

struct FixedPoint {
  State location;
  double residual;                    // |rhs| at the located point
  // Real parts of the on-simplex linearization eigenvalues (2x2 reduced
  // system in (u_A, u_B)); opposite signs indicate a saddle.
  std::array<double, 2> eigenvalues;
};

// Looks for the interior fixed point (present for 1/3 < phi < 3) by damped
// Newton iteration from the centroid.  Empty when the iteration leaves the
// simplex or fails to converge.
std::optional<FixedPoint> find_interior_fixed_point(const FitnessParams& params);

}  // namespace ng::meanfield

#endif  // NG_MEANFIELD_HPP

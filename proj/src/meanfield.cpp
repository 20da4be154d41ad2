#include "ng/meanfield.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ng::meanfield {

namespace {

constexpr double kSimplexTol = 1e-6;
constexpr double kRenormTol = 1e-12;
constexpr double kVertexTol = 1e-6;

void check_on_simplex(const State& u) {
  if (u.u_a < -kSimplexTol || u.u_b < -kSimplexTol || u.u_ab < -kSimplexTol ||
      std::abs(u.simplex_defect()) > kSimplexTol) {
    throw std::domain_error("state is off the frequency simplex");
  }
}

Derivative rhs_unchecked(const State& u, const DerivedProbs& d) {
  const double da = u.u_a * u.u_ab * (1.0 - 2.0 * d.q_B) -
                    u.u_a * u.u_b * d.p_ba() +
                    2.0 * u.u_ab * u.u_ab * d.p_ab();
  const double db = u.u_b * u.u_ab * (1.0 - 2.0 * d.q_A) -
                    u.u_a * u.u_b * d.p_ab() +
                    2.0 * u.u_ab * u.u_ab * d.p_ba();
  return {da, db, -(da + db)};
}

State renormalize(State u) {
  u.u_a = std::max(u.u_a, 0.0);
  u.u_b = std::max(u.u_b, 0.0);
  u.u_ab = std::max(u.u_ab, 0.0);
  const double sum = u.u_a + u.u_b + u.u_ab;
  u.u_a /= sum;
  u.u_b /= sum;
  u.u_ab /= sum;
  return u;
}

LimitClass classify(const State& u) {
  if (std::abs(u.u_a - 1.0) < kVertexTol && std::abs(u.u_b) < kVertexTol) {
    return LimitClass::VertexA;
  }
  if (std::abs(u.u_b - 1.0) < kVertexTol && std::abs(u.u_a) < kVertexTol) {
    return LimitClass::VertexB;
  }
  return LimitClass::Undecided;
}

}  // namespace

const char* to_string(LimitClass c) {
  switch (c) {
    case LimitClass::VertexA: return "e_A";
    case LimitClass::VertexB: return "e_B";
    default: return "undecided";
  }
}

Derivative rhs(const State& u, const FitnessParams& params) {
  check_on_simplex(u);
  return rhs_unchecked(u, derive(params));
}

double difference_rhs(const State& u, const FitnessParams& params) {
  check_on_simplex(u);
  const double phi = derive(params).phi;
  return (3.0 * phi - 1.0) / (3.0 * phi + 1.0) * u.u_a * u.u_ab +
         (phi - 3.0) / (phi + 3.0) * u.u_b * u.u_ab +
         (phi - 1.0) / (phi + 1.0) * (u.u_a * u.u_b + 2.0 * u.u_ab * u.u_ab);
}

std::array<double, 3> jacobian_eB_eigenvalues(const FitnessParams& params) {
  const double phi = derive(params).phi;
  return {-1.0 / (phi + 1.0), 0.0, (phi - 3.0) / (phi + 3.0)};
}

void IntegrationResult::write_csv(std::ostream& out) const {
  out << "t,u_A,u_B,u_AB\n";
  for (const auto& [t, u] : trajectory) {
    out << t << ',' << u.u_a << ',' << u.u_b << ',' << u.u_ab << '\n';
  }
}

IntegrationResult integrate(const State& u0, const FitnessParams& params,
                            double dt, double t_max, double record_stride) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  check_on_simplex(u0);
  const DerivedProbs d = derive(params);

  const auto step = [&d, dt](const State& u) {
    const auto add = [](const State& s, const Derivative& k, double h) {
      return State{s.u_a + h * k.u_a, s.u_b + h * k.u_b, s.u_ab + h * k.u_ab};
    };
    const Derivative k1 = rhs_unchecked(u, d);
    const Derivative k2 = rhs_unchecked(add(u, k1, dt / 2), d);
    const Derivative k3 = rhs_unchecked(add(u, k2, dt / 2), d);
    const Derivative k4 = rhs_unchecked(add(u, k3, dt), d);
    return State{
        u.u_a + dt / 6 * (k1.u_a + 2 * k2.u_a + 2 * k3.u_a + k4.u_a),
        u.u_b + dt / 6 * (k1.u_b + 2 * k2.u_b + 2 * k3.u_b + k4.u_b),
        u.u_ab + dt / 6 * (k1.u_ab + 2 * k2.u_ab + 2 * k3.u_ab + k4.u_ab)};
  };

  IntegrationResult result;
  State u = u0;
  double t = 0.0;
  double next_record = 0.0;
  while (true) {
    if (t >= next_record) {
      result.trajectory.push_back({t, u});
      next_record = record_stride > 0 ? next_record + record_stride : t;
    }
    result.limit = classify(u);
    if (result.limit != LimitClass::Undecided || t >= t_max) break;
    u = step(u);
    if (std::abs(u.simplex_defect()) > kRenormTol) u = renormalize(u);
    t += dt;
  }
  result.trajectory.push_back({t, u});
  return result;
}

std::optional<FixedPoint> find_interior_fixed_point(const FitnessParams& params) {
  const DerivedProbs d = derive(params);
  // Newton in the reduced coordinates (u_A, u_B) with numeric Jacobian.
  double ua = 1.0 / 3.0, ub = 1.0 / 3.0;
  const auto f = [&d](double a, double b) {
    const Derivative k = rhs_unchecked({a, b, 1.0 - a - b}, d);
    return std::array<double, 2>{k.u_a, k.u_b};
  };
  const double h = 1e-7;
  for (int iter = 0; iter < 200; ++iter) {
    const auto f0 = f(ua, ub);
    const double norm = std::abs(f0[0]) + std::abs(f0[1]);
    if (norm < 1e-13) break;
    const auto fa = f(ua + h, ub);
    const auto fb = f(ua, ub + h);
    const double j00 = (fa[0] - f0[0]) / h, j01 = (fb[0] - f0[0]) / h;
    const double j10 = (fa[1] - f0[1]) / h, j11 = (fb[1] - f0[1]) / h;
    const double det = j00 * j11 - j01 * j10;
    if (std::abs(det) < 1e-300) return std::nullopt;
    double sa = (j11 * f0[0] - j01 * f0[1]) / det;
    double sb = (j00 * f0[1] - j10 * f0[0]) / det;
    // Damp so the iterate stays strictly interior.
    double lambda = 1.0;
    while (lambda > 1e-6) {
      const double na = ua - lambda * sa, nb = ub - lambda * sb;
      if (na > 1e-9 && nb > 1e-9 && na + nb < 1.0 - 1e-9) break;
      lambda /= 2;
    }
    ua -= lambda * sa;
    ub -= lambda * sb;
  }
  const auto fr = f(ua, ub);
  const double residual = std::hypot(fr[0], fr[1]);
  if (residual > 1e-9 || ua < 1e-6 || ub < 1e-6 || ua + ub > 1.0 - 1e-6) {
    return std::nullopt;
  }
  // On-simplex linearization from the reduced 2x2 Jacobian.
  const auto f0 = f(ua, ub);
  const auto fa = f(ua + h, ub);
  const auto fb = f(ua, ub + h);
  const double j00 = (fa[0] - f0[0]) / h, j01 = (fb[0] - f0[0]) / h;
  const double j10 = (fa[1] - f0[1]) / h, j11 = (fb[1] - f0[1]) / h;
  const double tr = j00 + j11;
  const double det = j00 * j11 - j01 * j10;
  const double disc = tr * tr - 4.0 * det;
  std::array<double, 2> eig;
  if (disc >= 0.0) {
    eig = {(tr + std::sqrt(disc)) / 2.0, (tr - std::sqrt(disc)) / 2.0};
  } else {
    eig = {tr / 2.0, tr / 2.0};
  }
  return FixedPoint{{ua, ub, 1.0 - ua - ub}, residual, eig};
}

}  // namespace ng::meanfield

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ng/interface1d.hpp"
#include "ng/model.hpp"

using ng::FitnessParams;
using namespace ng::interface1d;

namespace {

double total_rate(const InterfaceModel& m, int type) {
  double sum = 0.0;
  for (const auto& s : m.displacement_law[type]) sum += s.rate;
  return sum;
}

// Weighted-displacement sum over one type's law.
double law_drift(const InterfaceModel& m, int type) {
  double sum = 0.0;
  for (const auto& s : m.displacement_law[type]) sum += s.rate * s.dx;
  return sum;
}

}  // namespace

TEST_CASE("type-chain rates and stationary law, unbiased case") {
  const InterfaceModel m = build_model({1.0, 1.0});  // r = 1/2
  CHECK(m.r01 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.r10 == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(m.r12 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m.r20 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.r21 == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(m.pi[0] == doctest::Approx(17.0 / 29).epsilon(1e-12));
  CHECK(m.pi[1] == doctest::Approx(10.0 / 29).epsilon(1e-12));
  CHECK(m.pi[2] == doctest::Approx(2.0 / 29).epsilon(1e-12));
  CHECK(m.drift[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(m.drift[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.drift[2] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(m.speed == doctest::Approx(-1.0 / 58).epsilon(1e-12));
}

TEST_CASE("speed at the mean-field threshold") {
  CHECK(speed(FitnessParams::from_ratio(3.0)) ==
        doctest::Approx(9.625 / 29.0).epsilon(1e-12));
}

TEST_CASE("structural identities of the displacement law") {
  for (double phi : {0.5, 1.0, 1.3, 2.0, 3.0, 6.0}) {
    const InterfaceModel m = build_model(FitnessParams::from_ratio(phi));
    const auto d = ng::derive(FitnessParams::from_ratio(phi));

    // Exit-rate bookkeeping: one interface edge in type 0, two in type 1,
    // three in type 2 (one of them partially a self-loop).
    CHECK(total_rate(m, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total_rate(m, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(total_rate(m, 2) == doctest::Approx(3.0).epsilon(1e-12));

    // Conditional drifts in closed form.
    CHECK(m.drift[0] == doctest::Approx(-d.p_ba()).epsilon(1e-12));
    CHECK(m.drift[1] == doctest::Approx(1.0 - 2.0 * d.q_B).epsilon(1e-12));
    CHECK(m.drift[2] ==
          doctest::Approx(m.drift[1] + 2.0 * d.p_ab()).epsilon(1e-12));
    CHECK(law_drift(m, 0) == doctest::Approx(m.drift[0]).epsilon(1e-12));
    CHECK(law_drift(m, 1) == doctest::Approx(m.drift[1]).epsilon(1e-12));
    CHECK(law_drift(m, 2) == doctest::Approx(m.drift[2]).epsilon(1e-12));

    // Stationarity: pi Q = 0 written through the three balance relations.
    const double r = d.r;
    CHECK(std::abs(m.pi[0] + m.pi[1] + m.pi[2] - 1.0) < 1e-12);
    CHECK(std::abs(m.pi[1] * r - m.pi[2] * (3.0 - r)) < 1e-12);
    CHECK(std::abs(m.pi[0] - (2.0 - r) * m.pi[1] - m.pi[2]) < 1e-12);
    // Equivalent form after eliminating the node-2 balance.
    CHECK(std::abs(m.pi[0] - 2.0 * m.pi[1] - (r - 2.0) * m.pi[2]) < 1e-12);
  }
}

TEST_CASE("sign of the speed matches the quadratic threshold") {
  const auto quadratic = [](double phi) {
    return 48.0 * phi * phi - 23.0 * phi - 29.0;
  };
  // The weighted-drift identity 17 D0 + 10 D1 + 2 D2 oc 48 phi^2 - 23 phi - 29.
  for (double phi = 0.25; phi <= 10.0; phi += 0.25) {
    const InterfaceModel m = build_model(FitnessParams::from_ratio(phi));
    const double weighted =
        17.0 * m.drift[0] + 10.0 * m.drift[1] + 2.0 * m.drift[2];
    const double scaled = quadratic(phi) / ((phi + 1.0) * (3.0 * phi + 1.0));
    CHECK(weighted == doctest::Approx(scaled).epsilon(1e-10));
  }
  // Away from the critical window the true speed agrees in sign too.
  for (double phi = 0.5; phi <= 5.0; phi += 0.125) {
    if (std::abs(phi - critical_quadratic()) < 0.05) continue;
    CHECK(speed(FitnessParams::from_ratio(phi)) * quadratic(phi) > 0.0);
  }
}

TEST_CASE("critical value: closed form and bisection agree") {
  const double cq = critical_quadratic();
  CHECK(cq == doctest::Approx((23.0 + std::sqrt(6097.0)) / 96.0).epsilon(1e-15));
  CHECK(cq == doctest::Approx(1.052951).epsilon(1e-6));
  CHECK(48.0 * cq * cq - 23.0 * cq - 29.0 ==
        doctest::Approx(0.0).epsilon(1e-12));
  // The bisected root of the stationary-weighted drift.  Independent oracle:
  // unique positive root of 45 phi^5 + 234 phi^4 + 250 phi^3 - 284 phi^2
  // - 255 phi - 54 (the numerator of the drift after clearing denominators).
  const double ce = critical_exact();
  CHECK(ce == doctest::Approx(1.0526822326376637).epsilon(1e-8));
  // The quadratic threshold is a one-sided bound: it sits slightly above the
  // exact root (measured gap ~2.7e-4), never below.
  CHECK(ce < cq);
  CHECK(cq - ce < 1e-3);
  CHECK(std::abs(speed(FitnessParams::from_ratio(ce))) < 1e-9);
}

TEST_CASE("reduced-chain simulation tracks the analytic law") {
  const double t_max = 200000.0;
  const InterfaceTrajectory tr =
      simulate_interface({1.0, 1.0}, t_max, 2024, 1000.0);
  CHECK(tr.t_final == t_max);
  double occ_sum = 0.0;
  const InterfaceModel m = build_model({1.0, 1.0});
  for (int j = 0; j < 3; ++j) {
    occ_sum += tr.occupation[j];
    CHECK(std::abs(tr.occupation[j] - m.pi[j]) < 4.0 * tr.occupation_se[j]);
  }
  CHECK(occ_sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(tr.empirical_speed - (-1.0 / 58)) < 4.0 * tr.speed_se);
  CHECK(tr.empirical_speed ==
        doctest::Approx(static_cast<double>(tr.x_final) / t_max).epsilon(1e-9));
  // Sampled rows are on the stride and carry valid types.
  REQUIRE(!tr.samples.empty());
  CHECK(tr.samples.front().t == 0.0);
  CHECK(tr.samples.front().x == 0);
  CHECK(tr.samples.front().type == 0);
  for (const auto& s : tr.samples) CHECK((s.type >= 0 && s.type <= 2));
}

TEST_CASE("reduced-chain speed changes sign across the critical point") {
  const InterfaceTrajectory below =
      simulate_interface(FitnessParams::from_ratio(0.9), 100000.0, 5);
  CHECK(below.empirical_speed + 4.0 * below.speed_se < 0.0);
  const InterfaceTrajectory above =
      simulate_interface(FitnessParams::from_ratio(1.2), 100000.0, 6);
  CHECK(above.empirical_speed - 4.0 * above.speed_se > 0.0);
}

TEST_CASE("invalid simulation arguments") {
  CHECK_THROWS_AS(simulate_interface({1.0, 1.0}, 0.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_restricted_lattice({1.0, 1.0}, 5, 100.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_restricted_lattice({1.0, 1.0}, 20, -1.0, 1),
                  std::invalid_argument);
}

TEST_CASE("restricted lattice run agrees with the reduced chain") {
  const auto params = FitnessParams::from_ratio(1.5);
  const double t_max = 20000.0;
  const InterfaceTrajectory lat =
      simulate_restricted_lattice(params, 30, t_max, 77, 100.0);
  REQUIRE_FALSE(lat.aborted);
  const InterfaceModel m = build_model(params);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(lat.occupation[j] - m.pi[j]) <
          4.0 * lat.occupation_se[j] + 1e-3);
  }
  CHECK(std::abs(lat.empirical_speed - m.speed) < 4.0 * lat.speed_se + 1e-3);
  REQUIRE(!lat.samples.empty());
  CHECK(lat.samples.front().type == 0);
  for (const auto& s : lat.samples) CHECK((s.type >= 0 && s.type <= 2));
}

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ng/complete.hpp"
#include "ng/graph.hpp"
#include "ng/rng.hpp"

using ng::DerivedProbs;
using ng::FitnessParams;
using ng::SimOutcome;
using namespace ng::complete_graph;

namespace {

double total_rate(const CountState& s, const FitnessParams& p) {
  double sum = 0.0;
  for (const auto& tr : lumped_rates(s, p)) sum += tr.rate;
  return sum;
}

}  // namespace

TEST_CASE("lumped rates on hand-checked states") {
  SUBCASE("single bilingual among B") {
    const auto ts = lumped_rates({0, 9, 1}, {3.0, 1.0});  // q_A = 1/2
    REQUIRE(ts.size() == 2);
    for (const auto& tr : ts) {
      CHECK(tr.rate == doctest::Approx(4.5).epsilon(1e-14));
      CHECK((tr.to == CountState{0, 10, 0} || tr.to == CountState{0, 8, 2}));
    }
  }
  SUBCASE("two bilinguals resolve directly") {
    const auto ts = lumped_rates({0, 0, 2}, {3.0, 1.0});
    REQUIRE(ts.size() == 2);
    for (const auto& tr : ts) {
      if (tr.to == CountState{2, 0, 0}) {
        CHECK(tr.rate == doctest::Approx(0.75).epsilon(1e-14));
      } else {
        CHECK(tr.to == CountState{0, 2, 0});
        CHECK(tr.rate == doctest::Approx(0.25).epsilon(1e-14));
      }
    }
  }
  SUBCASE("absorbing states have no outgoing rate") {
    CHECK(lumped_rates({5, 0, 0}, {2.0, 1.0}).empty());
    CHECK(lumped_rates({0, 7, 0}, {2.0, 1.0}).empty());
  }
  SUBCASE("population is conserved and the exit rate counts active pairs") {
    ng::rng::Stream pick(99, 0);
    const ng::Graph g = ng::Graph::complete(12);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<ng::VertexState> states(12);
      for (auto& s : states) s = static_cast<ng::VertexState>(pick() % 3);
      const ng::Configuration cfg(states);
      const CountState s{static_cast<int>(cfg.n_a()),
                         static_cast<int>(cfg.n_b()),
                         static_cast<int>(cfg.n_ab())};
      const auto counts = ng::edge_type_counts(cfg, g);
      using S = ng::VertexState;
      const double active =
          static_cast<double>(counts.get(S::A, S::B) +
                              counts.get(S::A, S::AB) +
                              counts.get(S::B, S::AB) +
                              counts.get(S::AB, S::AB));
      CHECK(total_rate(s, {2.5, 1.0}) == doctest::Approx(active).epsilon(1e-12));
      for (const auto& tr : lumped_rates(s, {2.5, 1.0})) {
        CHECK(tr.to.n() == 12);
        CHECK(tr.to.n_a >= 0);
        CHECK(tr.to.n_b >= 0);
        CHECK(tr.to.n_ab >= 0);
      }
    }
  }
}

TEST_CASE("exact absorption probabilities") {
  SUBCASE("bad sizes are rejected") {
    CHECK_THROWS_AS(exact_absorption(1, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(exact_absorption(kExactAbsorptionCap + 1, {1.0, 1.0}),
                    std::invalid_argument);
    const AbsorptionTable t = exact_absorption(4, {1.0, 1.0});
    CHECK_THROWS_AS(t.at({0, 4, 1}), std::invalid_argument);
  }
  SUBCASE("boundary values") {
    for (int n : {2, 5, 11}) {
      const AbsorptionTable t = exact_absorption(n, {2.0, 1.0});
      CHECK(t.at({n, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(t.at({0, n, 0}) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  SUBCASE("two-vertex chain in closed form") {
    for (double phi : {0.3, 1.0, 2.0, 3.0, 7.5}) {
      const DerivedProbs d = ng::derive(FitnessParams::from_ratio(phi));
      const AbsorptionTable t =
          exact_absorption(2, FitnessParams::from_ratio(phi));
      CHECK(std::abs(t.at({0, 1, 1}) - d.q_A * d.p_ab()) < 1e-12);
      const double from_a_bi = (1.0 - d.q_B) + d.q_B * d.p_ab();
      CHECK(std::abs(t.at({1, 0, 1}) - from_a_bi) < 1e-12);
      CHECK(std::abs(t.at({0, 0, 2}) - d.p_ab()) < 1e-12);
      const double from_mixed =
          d.p_ab() * from_a_bi + d.p_ba() * d.q_A * d.p_ab();
      CHECK(std::abs(t.at({1, 1, 0}) - from_mixed) < 1e-12);
    }
  }
  SUBCASE("strong bias keeps single-mutant invasion away from zero") {
    // Stopping-theorem floor 1 - a with a = max(3/phi, 1/sqrt(phi)): the
    // supermartingale needs a >= 3/phi for the B-AB term and a >= 1/sqrt(phi)
    // for the AB-AB term, so beyond phi = 9 the plain 1 - 3/phi floor is not
    // valid (and indeed fails numerically).
    for (double phi : {4.0, 6.0, 10.0}) {
      const double floor = 1.0 - std::max(3.0 / phi, 1.0 / std::sqrt(phi));
      for (int n = 2; n <= 15; ++n) {
        const AbsorptionTable t =
            exact_absorption(n, FitnessParams::from_ratio(phi));
        CHECK(t.at({0, n - 1, 1}) >= floor);
      }
    }
  }
}

TEST_CASE("lumped simulation") {
  SUBCASE("absorbing start returns immediately") {
    const SimOutcome o = simulate_lumped({2.0, 1.0}, {6, 0, 0}, 1, 1000);
    CHECK(o.kind == SimOutcome::Kind::AbsorbedA);
    CHECK(o.events_executed == 0);
    CHECK(o.absorption_time == 0.0);
  }
  SUBCASE("deterministic in the seed") {
    const SimOutcome a = simulate_lumped({2.0, 1.0}, {0, 7, 1}, 42, 100000);
    const SimOutcome b = simulate_lumped({2.0, 1.0}, {0, 7, 1}, 42, 100000);
    CHECK(a.kind == b.kind);
    CHECK(a.absorption_time == b.absorption_time);
    CHECK(a.events_executed == b.events_executed);
  }
  SUBCASE("frequency of all-A matches the exact solve") {
    const FitnessParams p{2.0, 1.0};
    const double exact = exact_absorption(5, p).at({0, 4, 1});
    constexpr int kReps = 20000;
    int wins = 0;
    for (int rep = 0; rep < kReps; ++rep) {
      const SimOutcome o =
          simulate_lumped(p, {0, 4, 1}, ng::rng::derive_seed(5, 1, rep), 100000);
      REQUIRE(o.kind != SimOutcome::Kind::Timeout);
      if (o.kind == SimOutcome::Kind::AbsorbedA) ++wins;
    }
    const double p_hat = static_cast<double>(wins) / kReps;
    const double sigma = std::sqrt(exact * (1.0 - exact) / kReps);
    CHECK(std::abs(p_hat - exact) < 4.0 * sigma);
  }
}

TEST_CASE("dominating birth-death process") {
  SUBCASE("subcritical bias dies out") {
    for (int i = 0; i < 10000; ++i) {
      const BirthDeathRun r = birth_death(50, {2.0, 1.0}, 100000, 900 + i);
      CHECK(r.extinct);
      CHECK(r.jumps % 2 == 1);  // parity: extinction takes an odd jump count
    }
  }
  SUBCASE("immediate-death frequency equals 1 - q_A") {
    constexpr int kRuns = 100000;
    const double p = 0.6;  // 1 - q_A at phi = 2
    int immediate = 0;
    for (int i = 0; i < kRuns; ++i) {
      if (birth_death(10, {2.0, 1.0}, 1000000, 31 + i).jumps == 1) ++immediate;
    }
    const double p_hat = static_cast<double>(immediate) / kRuns;
    CHECK(std::abs(p_hat - p) < 4.0 * std::sqrt(p * (1.0 - p) / kRuns));
  }
  SUBCASE("supercritical survival probability") {
    // q_A = 3/4 at phi = 9; survival from one individual is 1 - (1-q)/q.
    constexpr int kRuns = 20000;
    const double p_survive = 2.0 / 3.0;
    int survived = 0;
    for (int i = 0; i < kRuns; ++i) {
      if (!birth_death(10, {9.0, 1.0}, 100000, 77 + i).extinct) ++survived;
    }
    const double p_hat = static_cast<double>(survived) / kRuns;
    CHECK(std::abs(p_hat - p_survive) <
          4.0 * std::sqrt(p_survive * (1.0 - p_survive) / kRuns));
  }
  SUBCASE("extinction-time law is bounded by the unrestricted walk count") {
    // P(extinct after exactly 2m+1 jumps) <= C(2m, m) q^m (1-q)^(m+1).
    constexpr int kRuns = 100000;
    const double q = 0.4;  // q_A at phi = 2
    std::vector<int> hist(12, 0);
    for (int i = 0; i < kRuns; ++i) {
      const BirthDeathRun r = birth_death(10, {2.0, 1.0}, 1000000, 5000 + i);
      if (r.jumps < hist.size()) ++hist[static_cast<int>(r.jumps)];
    }
    double binom = 1.0;  // C(2m, m) for m = 0
    for (int m = 0; m <= 4; ++m) {
      const double bound =
          binom * std::pow(q, m) * std::pow(1.0 - q, m + 1);
      const double freq = static_cast<double>(hist[2 * m + 1]) / kRuns;
      const double slack = 4.0 * std::sqrt(bound * (1.0 - bound) / kRuns);
      CHECK(freq <= bound + slack);
      binom = binom * (2 * m + 1) * (2 * m + 2) / ((m + 1) * (m + 1));
    }
  }
}

TEST_CASE("bilingual collision frequency") {
  SUBCASE("two vertices give exactly q_A") {
    const auto est = collision_experiment(2, {3.0, 1.0}, 50000, 3);
    CHECK(std::abs(est.point - 0.5) < 4.0 * std::sqrt(0.25 / 50000.0));
    CHECK(est.ci_low < 0.5);
    CHECK(est.ci_high > 0.5);
  }
  SUBCASE("collisions fade as the population grows") {
    const auto small = collision_experiment(10, {2.0, 1.0}, 20000, 4);
    const auto large = collision_experiment(100, {2.0, 1.0}, 20000, 5);
    CHECK(large.ci_high < small.ci_low);
  }
}

#include "ng/complete.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <stdexcept>

#include "ng/rng.hpp"

namespace ng::complete_graph {

namespace {

// Dense triangular indexing over (n_a, n_ab) with n_a + n_ab <= N.
std::size_t state_index(int n, int n_a, int n_ab) {
  const std::size_t offset =
      static_cast<std::size_t>(n_a) * (n + 1) -
      static_cast<std::size_t>(n_a) * (n_a - 1) / 2;
  return offset + static_cast<std::size_t>(n_ab);
}

std::size_t state_count(int n) {
  return static_cast<std::size_t>(n + 1) * (n + 2) / 2;
}

void check_state(const CountState& s) {
  if (s.n_a < 0 || s.n_b < 0 || s.n_ab < 0 || s.n() == 0) {
    throw std::invalid_argument("invalid count state");
  }
}

}  // namespace

std::vector<Transition> lumped_rates(const CountState& s,
                                     const FitnessParams& params) {
  check_state(s);
  const DerivedProbs d = derive(params);
  std::vector<Transition> out;
  out.reserve(8);
  const double na = s.n_a, nb = s.n_b, nab = s.n_ab;

  const auto push = [&out](int a, int b, int ab, double rate) {
    if (rate > 0.0) out.push_back({{a, b, ab}, rate});
  };

  const double pairs_ab = na * nb;
  push(s.n_a, s.n_b - 1, s.n_ab + 1, pairs_ab * d.p_ab());
  push(s.n_a - 1, s.n_b, s.n_ab + 1, pairs_ab * d.p_ba());

  const double pairs_a_bi = na * nab;
  push(s.n_a + 1, s.n_b, s.n_ab - 1, pairs_a_bi * (1.0 - d.q_B));
  push(s.n_a - 1, s.n_b, s.n_ab + 1, pairs_a_bi * d.q_B);

  const double pairs_b_bi = nb * nab;
  push(s.n_a, s.n_b + 1, s.n_ab - 1, pairs_b_bi * (1.0 - d.q_A));
  push(s.n_a, s.n_b - 1, s.n_ab + 1, pairs_b_bi * d.q_A);

  const double pairs_bi_bi = nab * (nab - 1.0) / 2.0;
  push(s.n_a + 2, s.n_b, s.n_ab - 2, pairs_bi_bi * d.p_ab());
  push(s.n_a, s.n_b + 2, s.n_ab - 2, pairs_bi_bi * d.p_ba());
  return out;
}

AbsorptionTable::AbsorptionTable(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {}

double AbsorptionTable::at(const CountState& s) const {
  if (s.n() != n_) throw std::invalid_argument("state has wrong population");
  return values_[state_index(n_, s.n_a, s.n_ab)];
}

AbsorptionTable exact_absorption(int n, const FitnessParams& params) {
  if (n < 2) throw std::invalid_argument("need at least two vertices");
  if (n > kExactAbsorptionCap) {
    throw std::invalid_argument(
        "population above the exact-solve cap; use Monte Carlo");
  }
  const std::size_t count = state_count(n);

  // (I - P) p = b over transient states, where P holds the jump-chain
  // probabilities and b collects mass jumping straight into all-A.
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(count));
  const std::size_t absorb_a = state_index(n, n, 0);
  const std::size_t absorb_b = state_index(n, 0, 0);

  for (int n_a = 0; n_a <= n; ++n_a) {
    for (int n_ab = 0; n_a + n_ab <= n; ++n_ab) {
      const std::size_t row = state_index(n, n_a, n_ab);
      const CountState s{n_a, n - n_a - n_ab, n_ab};
      if (s.absorbed()) {
        triplets.emplace_back(row, row, 1.0);
        if (row == absorb_a) rhs[static_cast<Eigen::Index>(row)] = 1.0;
        continue;
      }
      const auto transitions = lumped_rates(s, params);
      double total = 0.0;
      for (const auto& tr : transitions) total += tr.rate;
      triplets.emplace_back(row, row, 1.0);
      for (const auto& tr : transitions) {
        const std::size_t col = state_index(n, tr.to.n_a, tr.to.n_ab);
        if (col == absorb_a) {
          rhs[static_cast<Eigen::Index>(row)] += tr.rate / total;
        } else if (col != absorb_b) {
          triplets.emplace_back(row, col, -tr.rate / total);
        }
      }
    }
  }

  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(count),
                                static_cast<Eigen::Index>(count));
  m.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.compute(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("absorption system factorization failed");
  }
  Eigen::VectorXd p = solver.solve(rhs);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("absorption system solve failed");
  }
  return AbsorptionTable(n, std::vector<double>(p.data(), p.data() + count));
}

SimOutcome simulate_lumped(const FitnessParams& params, const CountState& start,
                           std::uint64_t seed, std::uint64_t max_events) {
  check_state(start);
  const DerivedProbs d = derive(params);
  rng::Stream stream(seed, 0);

  CountState s = start;
  double t = 0.0;
  std::uint64_t events = 0;
  // Channel table mirrors lumped_rates; kept inline for O(1) per event.
  while (!s.absorbed() && events < max_events) {
    const double na = s.n_a, nb = s.n_b, nab = s.n_ab;
    const double rate_ab = na * nb;
    const double rate_a_bi = na * nab;
    const double rate_b_bi = nb * nab;
    const double rate_bi_bi = nab * (nab - 1.0) / 2.0;
    const double channels[8] = {
        rate_ab * d.p_ab(),        rate_ab * d.p_ba(),
        rate_a_bi * (1.0 - d.q_B), rate_a_bi * d.q_B,
        rate_b_bi * (1.0 - d.q_A), rate_b_bi * d.q_A,
        rate_bi_bi * d.p_ab(),     rate_bi_bi * d.p_ba()};
    double total = 0.0;
    for (double c : channels) total += c;

    t += stream.exponential() / total;
    ++events;
    double pick = stream.uniform() * total;
    int chosen = 0;
    for (; chosen < 7; ++chosen) {
      pick -= channels[chosen];
      if (pick < 0.0) break;
    }
    switch (chosen) {
      case 0: s.n_b -= 1; s.n_ab += 1; break;
      case 1: s.n_a -= 1; s.n_ab += 1; break;
      case 2: s.n_a += 1; s.n_ab -= 1; break;
      case 3: s.n_a -= 1; s.n_ab += 1; break;
      case 4: s.n_b += 1; s.n_ab -= 1; break;
      case 5: s.n_b -= 1; s.n_ab += 1; break;
      case 6: s.n_a += 2; s.n_ab -= 2; break;
      default: s.n_b += 2; s.n_ab -= 2; break;
    }
  }
  if (!s.absorbed()) return {SimOutcome::Kind::Timeout, t, events};
  return {s.n_a == s.n() ? SimOutcome::Kind::AbsorbedA
                         : SimOutcome::Kind::AbsorbedB,
          t, events};
}

BirthDeathRun birth_death(int n, const FitnessParams& params,
                          std::uint64_t max_jumps, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("population must be positive");
  const DerivedProbs d = derive(params);
  rng::Stream stream(seed, 0);

  // Both per-capita rates carry the same factor N, so the embedded jump
  // chain steps up with probability q_A regardless of the current size.
  BirthDeathRun run;
  int z = 1;
  while (z > 0 && run.jumps < max_jumps) {
    ++run.jumps;
    z += stream.uniform() < d.q_A ? 1 : -1;
    if (z > run.peak) run.peak = z;
  }
  run.extinct = (z == 0);
  return run;
}

EstimateWithCI collision_experiment(int n, const FitnessParams& params,
                                    std::uint64_t replicates,
                                    std::uint64_t seed,
                                    std::uint64_t max_events) {
  if (n < 2) throw std::invalid_argument("need at least two vertices");
  const DerivedProbs d = derive(params);

  std::uint64_t collisions = 0;
  for (std::uint64_t rep = 0; rep < replicates; ++rep) {
    rng::Stream stream(rng::derive_seed(seed, 0, rep), 0);
    CountState s{0, n - 1, 1};
    std::uint64_t events = 0;
    while (!s.absorbed() && events < max_events) {
      const double na = s.n_a, nb = s.n_b, nab = s.n_ab;
      const double rate_ab = na * nb;
      const double rate_a_bi = na * nab;
      const double rate_b_bi = nb * nab;
      const double rate_bi_bi = nab * (nab - 1.0) / 2.0;
      const double channels[8] = {
          rate_ab * d.p_ab(),        rate_ab * d.p_ba(),
          rate_a_bi * (1.0 - d.q_B), rate_a_bi * d.q_B,
          rate_b_bi * (1.0 - d.q_A), rate_b_bi * d.q_A,
          rate_bi_bi * d.p_ab(),     rate_bi_bi * d.p_ba()};
      double total = 0.0;
      for (double c : channels) total += c;
      ++events;
      double pick = stream.uniform() * total;
      int chosen = 0;
      for (; chosen < 7; ++chosen) {
        pick -= channels[chosen];
        if (pick < 0.0) break;
      }
      if (chosen >= 6) {  // a bilingual-bilingual interaction fired
        ++collisions;
        break;
      }
      switch (chosen) {
        case 0: s.n_b -= 1; s.n_ab += 1; break;
        case 1: s.n_a -= 1; s.n_ab += 1; break;
        case 2: s.n_a += 1; s.n_ab -= 1; break;
        case 3: s.n_a -= 1; s.n_ab += 1; break;
        case 4: s.n_b += 1; s.n_ab -= 1; break;
        default: s.n_b -= 1; s.n_ab += 1; break;
      }
    }
  }
  return wilson_estimate(collisions, replicates);
}

}  // namespace ng::complete_graph

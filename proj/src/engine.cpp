#include "ng/engine.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ng/rng.hpp"

namespace ng {

namespace {

// Stream ids: edge marks use the edge index, the scheduler gets its own
// block so it can never collide with an edge stream.
constexpr std::uint64_t kSchedulerStream = 1ULL << 32;

// Unbiased-enough range reduction (bias < |E| / 2^64).
std::size_t pick_index(std::uint64_t bits, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(bits) * n) >> 64);
}

bool absorbed(const Configuration& c) {
  return c.all(VertexState::A) || c.all(VertexState::B);
}

SimOutcome::Kind absorbed_kind(const Configuration& c) {
  return c.all(VertexState::A) ? SimOutcome::Kind::AbsorbedA
                               : SimOutcome::Kind::AbsorbedB;
}

}  // namespace

const char* to_string(SimOutcome::Kind kind) {
  switch (kind) {
    case SimOutcome::Kind::AbsorbedA: return "absorbed_A";
    case SimOutcome::Kind::AbsorbedB: return "absorbed_B";
    default: return "timeout";
  }
}

void TrajectoryRecord::write_csv(std::ostream& out) const {
  out << "t,n_A,n_B,n_AB\n";
  for (const auto& row : rows) {
    out << row.t << ',' << row.n_a << ',' << row.n_b << ',' << row.n_ab << '\n';
  }
}

RunResult run(const Graph& g, const FitnessParams& params,
              const Configuration& init, std::uint64_t seed,
              std::uint64_t max_events, std::optional<double> record_stride) {
  if (init.size() != g.n_vertices()) {
    throw std::invalid_argument("configuration size does not match graph");
  }
  if (max_events == 0) throw std::invalid_argument("max_events must be positive");

  const DerivedProbs probs = derive(params);
  Configuration config = init;
  const std::size_t n_edges = g.n_edges();

  RunResult result{.outcome = {}, .final_config = config, .trajectory = {}};
  double next_sample = 0.0;
  if (record_stride) {
    result.trajectory.emplace();
    result.trajectory->rows.push_back(
        {0.0, config.n_a(), config.n_b(), config.n_ab()});
    next_sample = *record_stride;
  }

  if (absorbed(config)) {
    result.outcome = {absorbed_kind(config), 0.0, 0};
    result.final_config = config;
    return result;
  }

  rng::Stream scheduler(seed, kSchedulerStream);
  std::vector<std::uint64_t> mark_counter(n_edges, 0);

  double t = 0.0;
  std::uint64_t events = 0;
  while (events < max_events) {
    t += scheduler.exponential() / static_cast<double>(n_edges);
    const std::size_t e = pick_index(scheduler(), n_edges);
    const double u =
        rng::keyed_uniform(seed, e, mark_counter[e]++);
    ++events;

    const auto [x, y] = g.edge(e);
    const VertexState sx = config.at(x);
    const VertexState sy = config.at(y);
    const PairOutcome out = pair_transition(sx, sy, u, probs);
    if (out.changed(sx, sy)) {
      config.set(x, out.new_x);
      config.set(y, out.new_y);
    }

    if (result.trajectory && t >= next_sample) {
      result.trajectory->rows.push_back(
          {t, config.n_a(), config.n_b(), config.n_ab()});
      while (next_sample <= t) next_sample += *record_stride;
    }

    if (absorbed(config)) {
      result.outcome = {absorbed_kind(config), t, events};
      result.final_config = config;
      if (result.trajectory) {
        result.trajectory->rows.push_back(
            {t, config.n_a(), config.n_b(), config.n_ab()});
      }
      return result;
    }
  }
  result.outcome = {SimOutcome::Kind::Timeout, t, events};
  result.final_config = config;
  return result;
}

namespace {

// The coupling order: lower(z)=A implies upper(z)=A and
// upper(z)=B implies lower(z)=B.
bool pair_ordered(VertexState upper, VertexState lower) {
  if (lower == VertexState::A && upper != VertexState::A) return false;
  if (upper == VertexState::B && lower != VertexState::B) return false;
  return true;
}

}  // namespace

CouplingReport run_coupled(const Graph& g, const FitnessParams& params,
                           const Configuration& upper,
                           const Configuration& lower, std::uint64_t seed,
                           std::uint64_t max_events) {
  if (upper.size() != g.n_vertices() || lower.size() != g.n_vertices()) {
    throw std::invalid_argument("configuration size does not match graph");
  }
  for (std::size_t z = 0; z < upper.size(); ++z) {
    if (!pair_ordered(upper.at(z), lower.at(z))) {
      throw std::invalid_argument("initial configurations are not ordered");
    }
  }

  const DerivedProbs probs = derive(params);
  Configuration up = upper;
  Configuration lo = lower;
  const std::size_t n_edges = g.n_edges();

  rng::Stream scheduler(seed, kSchedulerStream);
  std::vector<std::uint64_t> mark_counter(n_edges, 0);

  CouplingReport report;
  std::uint64_t events = 0;
  while (events < max_events && !(absorbed(up) && absorbed(lo))) {
    scheduler.exponential();  // shared clock; the gap itself is not needed
    const std::size_t e = pick_index(scheduler(), n_edges);
    const double u = rng::keyed_uniform(seed, e, mark_counter[e]++);
    ++events;

    const auto [x, y] = g.edge(e);
    for (Configuration* c : {&up, &lo}) {
      const VertexState sx = c->at(x);
      const VertexState sy = c->at(y);
      const PairOutcome out = pair_transition(sx, sy, u, probs);
      if (out.changed(sx, sy)) {
        c->set(x, out.new_x);
        c->set(y, out.new_y);
      }
    }

    // Ordering can only break at the two updated vertices.
    if (!pair_ordered(up.at(x), lo.at(x)) || !pair_ordered(up.at(y), lo.at(y))) {
      report.ordered = false;
      report.first_violation = events;
      break;
    }
  }
  report.events_executed = events;
  report.upper_kind = absorbed(up) ? absorbed_kind(up) : SimOutcome::Kind::Timeout;
  report.lower_kind = absorbed(lo) ? absorbed_kind(lo) : SimOutcome::Kind::Timeout;
  return report;
}

double supermartingale_drift(const Configuration& config, const Graph& g,
                             const FitnessParams& params, double a) {
  if (!(a > 0.0) || a > 1.0) throw std::domain_error("a must be in (0, 1]");
  const DerivedProbs d = derive(params);
  const EdgeTypeCounts e = edge_type_counts(config, g);
  using S = VertexState;

  const double m = std::pow(a, static_cast<double>(config.n_a()) -
                                   static_cast<double>(config.n_b()));
  const double ai = 1.0 / a;
  const double bracket =
      static_cast<double>(e.get(S::A, S::AB)) *
          ((a - 1.0) * (1.0 - d.q_B) + (ai - 1.0) * d.q_B) +
      static_cast<double>(e.get(S::B, S::AB)) *
          ((a - 1.0) * d.q_A + (ai - 1.0) * (1.0 - d.q_A)) +
      static_cast<double>(e.get(S::A, S::B)) *
          ((a - 1.0) * d.p_ab() + (ai - 1.0) * d.p_ba()) +
      static_cast<double>(e.get(S::AB, S::AB)) *
          ((a * a - 1.0) * d.p_ab() + (ai * ai - 1.0) * d.p_ba());
  return m * bracket;
}

}  // namespace ng

#include "ng/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ng/engine.hpp"
#include "ng/parallel.hpp"
#include "ng/rng.hpp"

namespace ng {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentConfig cfg;
  if (j.contains("graph")) cfg.graph = j.at("graph").get<std::string>();
  if (j.contains("phi")) {
    cfg.phi_a = j.at("phi").get<double>();
    cfg.phi_b = 1.0;
  }
  if (j.contains("phi_a")) cfg.phi_a = j.at("phi_a").get<double>();
  if (j.contains("phi_b")) cfg.phi_b = j.at("phi_b").get<double>();
  if (j.contains("init")) cfg.init = j.at("init").get<std::string>();
  if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<std::uint64_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("max_events")) cfg.max_events = j.at("max_events").get<std::uint64_t>();
  if (j.contains("strict_timeout")) cfg.strict_timeout = j.at("strict_timeout").get<bool>();
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
  return cfg;
}

std::string ExperimentConfig::to_json_text() const {
  ordered_json j;
  j["graph"] = graph;
  j["phi_a"] = phi_a;
  j["phi_b"] = phi_b;
  j["init"] = init;
  j["replicates"] = replicates;
  j["seed"] = seed;
  j["max_events"] = max_events;
  j["strict_timeout"] = strict_timeout;
  j["out"] = out;
  j["format"] = format;
  return j.dump(2);
}

std::uint64_t default_max_events(const Graph& g) {
  return 10000ULL * g.n_edges();
}

Configuration make_init(const std::string& spec, const Graph& g) {
  const std::size_t n = g.n_vertices();
  if (spec == "all-b") return Configuration(n, VertexState::B);
  if (spec == "all-a") return Configuration(n, VertexState::A);
  if (spec == "step") {
    // Left half A, right half B (by vertex index).
    Configuration c(n, VertexState::B);
    for (std::size_t v = 0; v < n / 2; ++v) c.set(v, VertexState::A);
    return c;
  }
  if (spec.rfind("single-ab:", 0) == 0) {
    const std::string arg = spec.substr(10);
    if (arg == "all") {
      throw std::invalid_argument(
          "single-ab:all enumerates start vertices; use estimate_invasion");
    }
    return Configuration::single_ab(n, std::stoul(arg));
  }
  if (spec.rfind("custom:", 0) == 0) {
    std::vector<VertexState> states;
    std::istringstream in(spec.substr(7));
    std::string token;
    while (std::getline(in, token, ',')) states.push_back(parse_state(token));
    if (states.size() != n) {
      throw std::invalid_argument("custom init length does not match graph");
    }
    return Configuration(std::move(states));
  }
  throw std::invalid_argument("unknown init spec: " + spec);
}

namespace {

VertexEstimate estimate_one_start(const Graph& g, const ExperimentConfig& cfg,
                                  std::size_t start, std::uint64_t cell) {
  const std::uint64_t max_events =
      cfg.max_events ? cfg.max_events : default_max_events(g);
  const Configuration init = Configuration::single_ab(g.n_vertices(), start);
  const FitnessParams params = cfg.params();

  std::vector<std::uint8_t> outcome(cfg.replicates);
  parallel_for(cfg.replicates, [&](std::size_t rep) {
    const auto result = run(g, params, init,
                            rng::derive_seed(cfg.seed, cell, rep), max_events);
    outcome[rep] = static_cast<std::uint8_t>(result.outcome.kind);
  });

  std::uint64_t successes = 0, timeouts = 0;
  for (std::uint8_t k : outcome) {
    if (k == static_cast<std::uint8_t>(SimOutcome::Kind::AbsorbedA)) ++successes;
    if (k == static_cast<std::uint8_t>(SimOutcome::Kind::Timeout)) ++timeouts;
  }
  const std::uint64_t trials =
      cfg.strict_timeout ? cfg.replicates : cfg.replicates - timeouts;
  return {start, wilson_estimate(successes, trials), timeouts};
}

}  // namespace

InvasionResult estimate_invasion(const ExperimentConfig& cfg) {
  if (cfg.replicates == 0) throw std::invalid_argument("replicates must be >= 1");
  const Graph g = Graph::from_spec(cfg.graph);

  std::vector<std::size_t> starts;
  InvasionResult result;
  const bool all_starts = cfg.init == "single-ab:all";
  if (!all_starts && cfg.init.rfind("single-ab:", 0) == 0) {
    starts = {std::stoul(cfg.init.substr(10))};
  } else if (g.vertex_transitive()) {
    starts = {0};
    result.single_representative = true;
  } else {
    for (std::size_t v = 0; v < g.n_vertices(); ++v) starts.push_back(v);
  }

  for (std::size_t i = 0; i < starts.size(); ++i) {
    result.per_vertex.push_back(estimate_one_start(g, cfg, starts[i], i));
    if (result.per_vertex.back().estimate.point <
        result.per_vertex[result.min_index].estimate.point) {
      result.min_index = result.per_vertex.size() - 1;
    }
  }
  return result;
}

std::vector<SweepCell> sweep(const ExperimentConfig& cfg,
                             const std::string& family,
                             const std::vector<std::size_t>& sizes,
                             const std::vector<double>& phis) {
  if (sizes.empty() || phis.empty()) {
    throw std::invalid_argument("sweep needs nonempty size and phi grids");
  }
  std::vector<SweepCell> cells;
  std::uint64_t cell_index = 0;
  for (std::size_t n : sizes) {
    const Graph g = Graph::from_spec(family + ":" + std::to_string(n));
    for (double phi : phis) {
      ExperimentConfig cell_cfg = cfg;
      cell_cfg.graph = family + ":" + std::to_string(n);
      cell_cfg.phi_a = phi;
      cell_cfg.phi_b = 1.0;
      const std::size_t start = 0;  // sweeps use the representative start
      VertexEstimate est = [&] {
        ExperimentConfig c = cell_cfg;
        const std::uint64_t max_events =
            c.max_events ? c.max_events : default_max_events(g);
        const Configuration init = Configuration::single_ab(g.n_vertices(), start);
        std::vector<std::uint8_t> outcome(c.replicates);
        parallel_for(c.replicates, [&](std::size_t rep) {
          const auto result =
              run(g, c.params(), init,
                  rng::derive_seed(c.seed, cell_index, rep), max_events);
          outcome[rep] = static_cast<std::uint8_t>(result.outcome.kind);
        });
        std::uint64_t successes = 0, timeouts = 0;
        for (std::uint8_t k : outcome) {
          if (k == static_cast<std::uint8_t>(SimOutcome::Kind::AbsorbedA)) ++successes;
          if (k == static_cast<std::uint8_t>(SimOutcome::Kind::Timeout)) ++timeouts;
        }
        const std::uint64_t trials =
            c.strict_timeout ? c.replicates : c.replicates - timeouts;
        return VertexEstimate{start, wilson_estimate(successes, trials), timeouts};
      }();
      cells.push_back({family, n, phi, start, cfg.replicates,
                       est.estimate.successes, est.timeouts, est.estimate,
                       cfg.seed});
      ++cell_index;
    }
  }
  return cells;
}

void write_sweep_csv(const std::vector<SweepCell>& cells, std::ostream& out) {
  out << "graph,N,phi,start_vertex,replicates,successes,timeouts,p_hat,"
         "ci_low,ci_high,seed\n";
  for (const auto& c : cells) {
    out << c.graph << ',' << c.n << ',' << format_double(c.phi) << ','
        << c.start_vertex << ',' << c.replicates << ',' << c.successes << ','
        << c.timeouts << ',' << format_double(c.estimate.point) << ','
        << format_double(c.estimate.ci_low) << ','
        << format_double(c.estimate.ci_high) << ',' << c.seed << '\n';
  }
}

}  // namespace ng

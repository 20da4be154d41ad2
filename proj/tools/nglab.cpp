// nglab: batch laboratory for the biased naming game.
//
// Subcommands map onto the library modules: closed-form probabilities,
// mean-field integration, event-driven simulation, invasion estimation,
// the one-dimensional interface chain, complete-graph analysis, the 2D
// block-construction arithmetic, and parameter sweeps.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ng/blocks.hpp"
#include "ng/complete.hpp"
#include "ng/engine.hpp"
#include "ng/experiment.hpp"
#include "ng/interface1d.hpp"
#include "ng/meanfield.hpp"
#include "ng/model.hpp"
#include "ng/rng.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

struct PhiOpts {
  double phi = 0.0;
  double phi_a = 0.0;
  double phi_b = 0.0;

  ng::FitnessParams params() const {
    if (phi > 0.0) return ng::FitnessParams::from_ratio(phi);
    if (phi_a > 0.0 && phi_b > 0.0) return {phi_a, phi_b};
    throw CLI::ValidationError("--phi or both --phi-a and --phi-b required");
  }
};

void add_phi_options(CLI::App* cmd, PhiOpts& opts) {
  cmd->add_option("--phi", opts.phi, "fitness ratio phi_A/phi_B");
  cmd->add_option("--phi-a", opts.phi_a, "fitness of word A");
  cmd->add_option("--phi-b", opts.phi_b, "fitness of word B");
}

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << j.dump(2) << '\n';
  }
}

template <typename Writer>
void emit_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  writer(out);
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) values.push_back(std::stod(token));
  return values;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> values;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) values.push_back(std::stoul(token));
  return values;
}

// Applies a JSON config file (mirroring the flags) as defaults; flags given
// on the command line override it.
ng::ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ng::ExperimentConfig::from_json_text(buffer.str());
}

ordered_json estimate_json(const ng::EstimateWithCI& e) {
  return ordered_json{{"successes", e.successes},
                      {"trials", e.trials},
                      {"point", e.point},
                      {"ci_low", e.ci_low},
                      {"ci_high", e.ci_high}};
}

int run_probabilities(const PhiOpts& phi, const std::string& out) {
  const ng::DerivedProbs d = ng::derive(phi.params());
  ordered_json j;
  j["phi"] = d.phi;
  j["phi_AB"] = d.phi_AB;
  const char* names[3] = {"A", "AB", "B"};
  ordered_json p;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      p[std::string(names[x]) + "->" + names[y]] = d.p[x][y];
    }
  }
  j["p"] = p;
  j["q_A"] = d.q_A;
  j["q_B"] = d.q_B;
  j["r"] = d.r;
  emit(j, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laboratory for the biased naming game on graphs"};
  app.require_subcommand(1);

  // ---- probabilities ----
  PhiOpts prob_phi;
  std::string prob_out;
  auto* cmd_prob = app.add_subcommand(
      "probabilities", "derived interaction probabilities for a fitness pair");
  add_phi_options(cmd_prob, prob_phi);
  cmd_prob->add_option("--out", prob_out, "output path (default stdout)");

  // ---- meanfield ----
  PhiOpts mf_phi;
  std::string mf_init = "0.0,0.99,0.01";
  double mf_dt = 1e-3, mf_tmax = 200.0, mf_stride = 0.1;
  std::string mf_out, mf_traj;
  bool mf_fixed_point = false;
  auto* cmd_mf = app.add_subcommand("meanfield", "integrate the well-mixed dynamics");
  add_phi_options(cmd_mf, mf_phi);
  cmd_mf->add_option("--init", mf_init, "start point uA,uB,uAB");
  cmd_mf->add_option("--dt", mf_dt, "integrator step");
  cmd_mf->add_option("--t-max", mf_tmax, "time horizon");
  cmd_mf->add_option("--stride", mf_stride, "trajectory sampling stride");
  cmd_mf->add_option("--trajectory", mf_traj, "write trajectory CSV here");
  cmd_mf->add_flag("--fixed-point", mf_fixed_point,
                   "also locate the interior fixed point");
  cmd_mf->add_option("--out", mf_out, "output path (default stdout)");

  // ---- simulate ----
  PhiOpts sim_phi;
  std::string sim_graph = "complete:10", sim_init = "single-ab:0";
  std::uint64_t sim_seed = 1, sim_max_events = 0;
  double sim_stride = 0.0;
  std::string sim_out, sim_traj;
  auto* cmd_sim = app.add_subcommand("simulate", "one event-driven run");
  add_phi_options(cmd_sim, sim_phi);
  cmd_sim->add_option("--graph", sim_graph, "graph spec family:size");
  cmd_sim->add_option("--init", sim_init, "initial configuration spec");
  cmd_sim->add_option("--seed", sim_seed, "RNG seed");
  cmd_sim->add_option("--max-events", sim_max_events, "event cap (0 = 1e4*|E|)");
  cmd_sim->add_option("--record-stride", sim_stride, "trajectory time stride");
  cmd_sim->add_option("--trajectory", sim_traj, "write trajectory CSV here");
  cmd_sim->add_option("--out", sim_out, "output path (default stdout)");

  // ---- invasion ----
  ng::ExperimentConfig inv_cfg;
  std::string inv_config_path;
  auto* cmd_inv = app.add_subcommand(
      "invasion", "Monte Carlo invasion probability from a single bilingual");
  cmd_inv->add_option("--config", inv_config_path, "JSON config file");
  auto* inv_graph = cmd_inv->add_option("--graph", inv_cfg.graph, "graph spec");
  auto* inv_phi = cmd_inv->add_option("--phi", inv_cfg.phi_a, "fitness ratio");
  auto* inv_phia = cmd_inv->add_option("--phi-a", inv_cfg.phi_a, "fitness of A");
  auto* inv_phib = cmd_inv->add_option("--phi-b", inv_cfg.phi_b, "fitness of B");
  auto* inv_init = cmd_inv->add_option("--init", inv_cfg.init,
                                       "single-ab:v or single-ab:all");
  auto* inv_reps = cmd_inv->add_option("--replicates", inv_cfg.replicates, "");
  auto* inv_seed = cmd_inv->add_option("--seed", inv_cfg.seed, "");
  auto* inv_maxev = cmd_inv->add_option("--max-events", inv_cfg.max_events, "");
  auto* inv_strict = cmd_inv->add_option(
      "--strict-timeout", inv_cfg.strict_timeout,
      "1: timeouts count as failures (default), 0: excluded");
  auto* inv_out = cmd_inv->add_option("--out", inv_cfg.out, "");
  auto* inv_fmt = cmd_inv->add_option("--format", inv_cfg.format, "csv|json");

  // ---- interface ----
  PhiOpts if_phi;
  double if_tmax = 0.0;
  std::uint64_t if_seed = 1;
  bool if_lattice = false;
  std::size_t if_window = 50;
  double if_stride = 0.0;
  std::string if_out, if_traj;
  auto* cmd_if = app.add_subcommand(
      "interface", "interface chain analysis and simulation (1D)");
  add_phi_options(cmd_if, if_phi);
  cmd_if->add_option("--simulate", if_tmax, "also simulate up to this time");
  cmd_if->add_option("--seed", if_seed, "RNG seed");
  cmd_if->add_flag("--lattice", if_lattice,
                   "simulate the restricted lattice instead of the reduced chain");
  cmd_if->add_option("--window", if_window, "lattice window half-width");
  cmd_if->add_option("--record-stride", if_stride, "trajectory time stride");
  cmd_if->add_option("--trajectory", if_traj, "write trajectory CSV (t,x,type)");
  cmd_if->add_option("--out", if_out, "output path (default stdout)");

  // ---- complete ----
  PhiOpts cg_phi;
  std::size_t cg_n = 10;
  std::string cg_mode = "exact";
  std::uint64_t cg_reps = 10000, cg_seed = 1;
  bool cg_collision = false;
  std::string cg_out;
  auto* cmd_cg = app.add_subcommand("complete",
                                    "complete-graph absorption analysis");
  add_phi_options(cmd_cg, cg_phi);
  cmd_cg->add_option("--n", cg_n, "number of vertices")->required();
  cmd_cg->add_option("--mode", cg_mode, "exact|mc");
  cmd_cg->add_option("--replicates", cg_reps, "MC replicates");
  cmd_cg->add_option("--seed", cg_seed, "RNG seed");
  cmd_cg->add_flag("--collision", cg_collision,
                   "also estimate the collision probability");
  cmd_cg->add_option("--out", cg_out, "output path (default stdout)");

  // ---- blocks ----
  PhiOpts bl_phi;
  double bl_eps = 0.0;
  std::string bl_out;
  auto* cmd_bl = app.add_subcommand("blocks",
                                    "2D block-construction probability bounds");
  add_phi_options(cmd_bl, bl_phi);
  cmd_bl->add_option("--eps", bl_eps, "also search min phi for bound >= 1-eps");
  cmd_bl->add_option("--out", bl_out, "output path (default stdout)");

  // ---- sweep ----
  ng::ExperimentConfig sw_cfg;
  std::string sw_config_path, sw_family = "complete";
  std::string sw_phis = "2", sw_sizes = "10";
  auto* cmd_sw = app.add_subcommand("sweep",
                                    "invasion estimates over a parameter grid");
  cmd_sw->add_option("--config", sw_config_path, "JSON config file");
  auto* sw_fam = cmd_sw->add_option("--family", sw_family, "graph family");
  cmd_sw->add_option("--phi-grid", sw_phis, "comma-separated phi values");
  cmd_sw->add_option("--n-grid", sw_sizes, "comma-separated sizes");
  auto* sw_reps = cmd_sw->add_option("--replicates", sw_cfg.replicates, "");
  auto* sw_seed = cmd_sw->add_option("--seed", sw_cfg.seed, "");
  auto* sw_maxev = cmd_sw->add_option("--max-events", sw_cfg.max_events, "");
  auto* sw_strict = cmd_sw->add_option("--strict-timeout", sw_cfg.strict_timeout, "");
  auto* sw_out = cmd_sw->add_option("--out", sw_cfg.out, "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_prob->parsed()) return run_probabilities(prob_phi, prob_out);

    if (cmd_mf->parsed()) {
      const auto parts = parse_double_list(mf_init);
      if (parts.size() != 3) throw std::runtime_error("--init needs uA,uB,uAB");
      const ng::meanfield::State u0{parts[0], parts[1], parts[2]};
      const auto params = mf_phi.params();
      const auto result = ng::meanfield::integrate(u0, params, mf_dt, mf_tmax,
                                                   mf_stride);
      if (!mf_traj.empty()) {
        emit_file(mf_traj, [&](std::ostream& o) { result.write_csv(o); });
      }
      ordered_json j;
      j["phi"] = ng::derive(params).phi;
      j["limit"] = ng::meanfield::to_string(result.limit);
      const auto& fin = result.trajectory.back();
      j["t_final"] = fin.t;
      j["u_final"] = {fin.u.u_a, fin.u.u_b, fin.u.u_ab};
      const auto eig = ng::meanfield::jacobian_eB_eigenvalues(params);
      j["jacobian_eB_eigenvalues"] = {eig[0], eig[1], eig[2]};
      if (mf_fixed_point) {
        if (const auto fp = ng::meanfield::find_interior_fixed_point(params)) {
          j["interior_fixed_point"] = {
              {"u", {fp->location.u_a, fp->location.u_b, fp->location.u_ab}},
              {"residual", fp->residual},
              {"eigenvalues", {fp->eigenvalues[0], fp->eigenvalues[1]}}};
        } else {
          j["interior_fixed_point"] = nullptr;
        }
      }
      emit(j, mf_out);
      return 0;
    }

    if (cmd_sim->parsed()) {
      const ng::Graph g = ng::Graph::from_spec(sim_graph);
      const auto init = ng::make_init(sim_init, g);
      const std::uint64_t cap =
          sim_max_events ? sim_max_events : ng::default_max_events(g);
      const auto result =
          ng::run(g, sim_phi.params(), init, sim_seed, cap,
                  sim_stride > 0.0 ? std::optional<double>(sim_stride)
                                   : std::nullopt);
      if (!sim_traj.empty() && result.trajectory) {
        emit_file(sim_traj,
                  [&](std::ostream& o) { result.trajectory->write_csv(o); });
      }
      ordered_json j;
      j["graph"] = sim_graph;
      j["phi"] = ng::derive(sim_phi.params()).phi;
      j["seed"] = sim_seed;
      j["outcome"] = ng::to_string(result.outcome.kind);
      j["absorption_time"] = result.outcome.absorption_time;
      j["events"] = result.outcome.events_executed;
      j["final_counts"] = {{"n_A", result.final_config.n_a()},
                           {"n_B", result.final_config.n_b()},
                           {"n_AB", result.final_config.n_ab()}};
      emit(j, sim_out);
      return 0;
    }

    if (cmd_inv->parsed()) {
      if (!inv_config_path.empty()) {
        ng::ExperimentConfig file_cfg = load_config(inv_config_path);
        // Flags override file values.
        if (!*inv_graph) inv_cfg.graph = file_cfg.graph;
        if (!*inv_phi && !*inv_phia) inv_cfg.phi_a = file_cfg.phi_a;
        if (!*inv_phib) inv_cfg.phi_b = file_cfg.phi_b;
        if (!*inv_init) inv_cfg.init = file_cfg.init;
        if (!*inv_reps) inv_cfg.replicates = file_cfg.replicates;
        if (!*inv_seed) inv_cfg.seed = file_cfg.seed;
        if (!*inv_maxev) inv_cfg.max_events = file_cfg.max_events;
        if (!*inv_strict) inv_cfg.strict_timeout = file_cfg.strict_timeout;
        if (!*inv_out) inv_cfg.out = file_cfg.out;
        if (!*inv_fmt) inv_cfg.format = file_cfg.format;
      }
      if (*inv_phi && !*inv_phib) inv_cfg.phi_b = 1.0;
      const auto result = ng::estimate_invasion(inv_cfg);
      ordered_json j;
      j["config"] = nlohmann::json::parse(inv_cfg.to_json_text());
      j["single_representative"] = result.single_representative;
      ordered_json per;
      for (const auto& v : result.per_vertex) {
        ordered_json row = estimate_json(v.estimate);
        row["start_vertex"] = v.start_vertex;
        row["timeouts"] = v.timeouts;
        per.push_back(row);
      }
      j["per_vertex"] = per;
      j["min"] = estimate_json(result.min_estimate().estimate);
      j["min"]["start_vertex"] = result.min_estimate().start_vertex;
      emit(j, inv_cfg.out);
      return 0;
    }

    if (cmd_if->parsed()) {
      const auto params = if_phi.params();
      const auto model = ng::interface1d::build_model(params);
      ordered_json j;
      j["phi"] = ng::derive(params).phi;
      j["rates"] = {{"r01", model.r01},
                    {"r10", model.r10},
                    {"r12", model.r12},
                    {"r20", model.r20},
                    {"r21", model.r21}};
      j["pi"] = {model.pi[0], model.pi[1], model.pi[2]};
      j["D"] = {model.drift[0], model.drift[1], model.drift[2]};
      j["speed"] = model.speed;
      j["c_quadratic"] = ng::interface1d::critical_quadratic();
      j["c_exact"] = ng::interface1d::critical_exact();
      if (if_tmax > 0.0) {
        const auto traj =
            if_lattice
                ? ng::interface1d::simulate_restricted_lattice(
                      params, if_window, if_tmax, if_seed, if_stride)
                : ng::interface1d::simulate_interface(params, if_tmax, if_seed,
                                                      if_stride);
        ordered_json sim;
        sim["kind"] = if_lattice ? "restricted-lattice" : "reduced-chain";
        sim["t_final"] = traj.t_final;
        sim["x_final"] = traj.x_final;
        sim["occupation"] = {traj.occupation[0], traj.occupation[1],
                             traj.occupation[2]};
        sim["empirical_speed"] = traj.empirical_speed;
        sim["speed_se"] = traj.speed_se;
        sim["aborted"] = traj.aborted;
        j["simulation"] = sim;
        if (!if_traj.empty()) {
          emit_file(if_traj, [&](std::ostream& o) {
            o << "t,x,type\n";
            for (const auto& s : traj.samples) {
              o << ng::format_double(s.t) << ',' << s.x << ',' << s.type << '\n';
            }
          });
        }
      }
      emit(j, if_out);
      return 0;
    }

    if (cmd_cg->parsed()) {
      const auto params = cg_phi.params();
      ordered_json j;
      j["N"] = cg_n;
      j["phi"] = ng::derive(params).phi;
      j["mode"] = cg_mode;
      const ng::complete_graph::CountState start{
          0, static_cast<int>(cg_n) - 1, 1};
      if (cg_mode == "exact") {
        const auto table =
            ng::complete_graph::exact_absorption(static_cast<int>(cg_n), params);
        j["p_A"] = table.at(start);
      } else if (cg_mode == "mc") {
        std::uint64_t successes = 0;
        for (std::uint64_t rep = 0; rep < cg_reps; ++rep) {
          const auto outcome = ng::complete_graph::simulate_lumped(
              params, start, ng::rng::derive_seed(cg_seed, 0, rep), 1ULL << 40);
          if (outcome.kind == ng::SimOutcome::Kind::AbsorbedA) ++successes;
        }
        const auto est = ng::wilson_estimate(successes, cg_reps);
        j["p_A"] = est.point;
        j["ci"] = {est.ci_low, est.ci_high};
      } else {
        throw std::runtime_error("--mode must be exact or mc");
      }
      if (cg_collision) {
        const auto est = ng::complete_graph::collision_experiment(
            static_cast<int>(cg_n), params, cg_reps, cg_seed);
        j["collision"] = estimate_json(est);
      }
      emit(j, cg_out);
      return 0;
    }

    if (cmd_bl->parsed()) {
      const double phi = ng::derive(bl_phi.params()).phi;
      const auto bp = ng::blocks2d::block_params(phi);
      const auto [lg, lb] = ng::blocks2d::interaction_rates(phi);
      ordered_json j;
      j["phi"] = phi;
      j["T"] = bp.t_window;
      j["lambda_good"] = lg;
      j["lambda_bad"] = lb;
      j["bound"] = ng::blocks2d::block_bound(phi);
      j["exact"] = ng::blocks2d::block_probability_exact(phi);
      if (bl_eps > 0.0) {
        j["eps"] = bl_eps;
        j["min_phi"] = ng::blocks2d::min_phi_for(bl_eps);
      }
      emit(j, bl_out);
      return 0;
    }

    if (cmd_sw->parsed()) {
      if (!sw_config_path.empty()) {
        ng::ExperimentConfig file_cfg = load_config(sw_config_path);
        if (!*sw_reps) sw_cfg.replicates = file_cfg.replicates;
        if (!*sw_seed) sw_cfg.seed = file_cfg.seed;
        if (!*sw_maxev) sw_cfg.max_events = file_cfg.max_events;
        if (!*sw_strict) sw_cfg.strict_timeout = file_cfg.strict_timeout;
        if (!*sw_out) sw_cfg.out = file_cfg.out;
        if (!*sw_fam && !file_cfg.graph.empty()) {
          sw_family = file_cfg.graph.substr(0, file_cfg.graph.find(':'));
        }
      }
      const auto cells = ng::sweep(sw_cfg, sw_family, parse_size_list(sw_sizes),
                                   parse_double_list(sw_phis));
      for (const auto& c : cells) {
        std::cerr << c.graph << ':' << c.n << " phi=" << c.phi
                  << " p_hat=" << c.estimate.point << '\n';
      }
      if (sw_cfg.out.empty()) {
        ng::write_sweep_csv(cells, std::cout);
      } else {
        emit_file(sw_cfg.out,
                  [&](std::ostream& o) { ng::write_sweep_csv(cells, o); });
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

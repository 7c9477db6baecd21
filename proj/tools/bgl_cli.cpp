// Copyright 2026 The BGL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Everything goes through the C API in bgl.h.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bgl/bgl.h"

namespace {

struct Deleter {
  void operator()(bgl_game* p) const { bgl_game_free(p); }
  void operator()(bgl_config* p) const { bgl_config_free(p); }
  void operator()(bgl_trajectory* p) const { bgl_trajectory_free(p); }
  void operator()(bgl_report* p) const { bgl_report_free(p); }
};
template <typename T>
using Handle = std::unique_ptr<T, Deleter>;

// Thrown after a failing C API call; carries the status for the exit code.
struct Failure {
  bgl_status status;
};

int exit_code(bgl_status st) {
  if (st == BGL_OK) return 0;
  return bgl_status_is_validation(st) ? 1 : 2;
}

void report_error(bgl_status st) {
  std::string msg = bgl_last_error();
  std::cerr << "error (" << bgl_status_name(st) << "): " << msg;
  const std::string field = bgl_last_error_field();
  // ConfigError messages already carry the field; add the position only.
  if (!field.empty() && msg.find(field) == std::string::npos) {
    std::cerr << " [field " << field << "]";
  }
  if (bgl_last_error_line() > 0 && msg.find("line") == std::string::npos) {
    std::cerr << " (line " << bgl_last_error_line() << ")";
  }
  std::cerr << "\n";
}

void check(bgl_status st) {
  if (st != BGL_OK) throw Failure{st};
}

// "0.5,0.5" or "1/3,1/3".
std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto slash = item.find('/');
    std::size_t used = 0;
    try {
      if (slash == std::string::npos) {
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } else {
        const std::string a = item.substr(0, slash), b = item.substr(slash + 1);
        std::size_t ua = 0, ub = 0;
        const double num = std::stod(a, &ua), den = std::stod(b, &ub);
        if (ua != a.size() || ub != b.size()) throw std::invalid_argument(item);
        out.push_back(num / den);
      }
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError("empty vector '" + text + "'");
  return out;
}

// "A:B" is the half-open range [A, B); otherwise a comma-separated list.
std::vector<uint64_t> parse_seeds(const std::string& text) {
  std::vector<uint64_t> out;
  try {
    if (auto colon = text.find(':'); colon != std::string::npos) {
      const uint64_t a = std::stoull(text.substr(0, colon));
      const uint64_t b = std::stoull(text.substr(colon + 1));
      if (b <= a) throw CLI::ValidationError("seed range '" + text + "' is empty");
      for (uint64_t s = a; s < b; ++s) out.push_back(s);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    }
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("bad seed list '" + text + "'");
  }
  return out;
}

struct Common {
  std::string format = "text";
  std::string output;  // also write the machine report here
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
  cmd->add_option("--output", c.output, "Also write the machine report to this file");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) {
    std::cerr << "error (io): cannot write '" << path << "'\n";
    throw Failure{BGL_ERR_IO};
  }
}

void emit(const Common& c, bgl_report* report) {
  if (c.format == "machine") {
    std::cout << bgl_report_json(report) << "\n";
  } else {
    std::cout << bgl_report_text(report);
  }
  if (!c.output.empty()) write_text_file(c.output, std::string(bgl_report_json(report)) + "\n");
}

// Game from --game NAME or the game section of --config FILE.
struct GameArgs {
  std::string name;
  std::string config;
  double sigma = 1.0;
};

void add_game(CLI::App* cmd, GameArgs& g) {
  auto* name = cmd->add_option("--game", g.name, "Builtin game name");
  auto* cfg = cmd->add_option("--config", g.config, "Run config whose game section is used")
                  ->check(CLI::ExistingFile);
  name->excludes(cfg);
  cmd->add_option("--sigma", g.sigma, "Noise standard deviation for builtin games")
      ->capture_default_str();
}

Handle<bgl_game> open_game(const GameArgs& g) {
  bgl_game* game = nullptr;
  if (!g.config.empty()) {
    bgl_config* raw = nullptr;
    check(bgl_config_load(g.config.c_str(), &raw));
    Handle<bgl_config> config(raw);
    check(bgl_game_from_config(config.get(), &game));
  } else if (!g.name.empty()) {
    check(bgl_game_builtin(g.name.c_str(), g.sigma, &game));
  } else {
    throw CLI::ValidationError("one of --game or --config is required");
  }
  return Handle<bgl_game>(game);
}

// `r` is read after the call that fills it has returned.
Handle<bgl_report> take(bgl_status st, bgl_report*& r) {
  Handle<bgl_report> h(r);
  check(st);
  return h;
}

void apply_schedule(bgl_config* config, const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  double param = kind == "every_n" ? 1.0 : 1.5;
  if (colon != std::string::npos) {
    try {
      param = std::stod(text.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("bad schedule parameter in '" + text + "'");
    }
  }
  check(bgl_config_set_schedule(config, kind.c_str(), param));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian learning dynamics in games with parameter uncertainty"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bgl_version()));

  // simulate
  Common sim_c;
  std::string sim_config, sim_seeds, sim_schedule, sim_traj, sim_summary;
  std::optional<uint64_t> sim_seed;
  std::optional<std::size_t> sim_horizon, sim_every;
  std::optional<double> sim_kl;
  double cluster_tol = 1e-3;
  auto* sim = app.add_subcommand("simulate", "Run the dynamics and persist the trajectory");
  sim->add_option("config", sim_config, "Run config (YAML)")->required()->check(CLI::ExistingFile);
  sim->add_option("--seed", sim_seed, "Override the config seed");
  sim->add_option("--seeds", sim_seeds, "Seed sweep: A:B (half-open) or a,b,c");
  sim->add_option("--horizon", sim_horizon, "Override the horizon");
  sim->add_option("--schedule", sim_schedule,
                  "every_stage | every_n:N | two_timescale:G");
  sim->add_option("--record-every", sim_every, "Keep every N-th stage in the trajectory file");
  sim->add_option("--trajectory", sim_traj, "Trajectory file (overrides the config)");
  sim->add_option("--summary", sim_summary, "Summary file (overrides the config)");
  sim->add_option("--kl-tol", sim_kl, "KL tolerance for payoff equivalence");
  sim->add_option("--cluster-tol", cluster_tol, "Sweep: distance under which final states are grouped")
      ->capture_default_str();
  add_common(sim, sim_c);

  // equilibrium
  Common eq_c;
  GameArgs eq_g;
  std::string eq_theta;
  double eq_tol = 1e-10;
  int eq_starts = 8;
  uint64_t eq_seed = 0;
  auto* eq = app.add_subcommand("equilibrium", "Equilibria of the game under a belief");
  add_game(eq, eq_g);
  eq->add_option("--theta", eq_theta, "Belief, comma separated")->required();
  eq->add_option("--tol", eq_tol, "Best-response displacement tolerance")->capture_default_str();
  eq->add_option("--starts", eq_starts, "Solver starts")->capture_default_str();
  eq->add_option("--seed", eq_seed, "Seed for random starts")->capture_default_str();
  add_common(eq, eq_c);

  // verify-fixpoint
  Common vf_c;
  GameArgs vf_g;
  std::string vf_theta, vf_q;
  double vf_kl = 1e-9, vf_br = 1e-8;
  auto* vf = app.add_subcommand("verify-fixpoint", "Check that (theta, q) is a fixed point");
  add_game(vf, vf_g);
  vf->add_option("--theta", vf_theta, "Belief")->required();
  vf->add_option("--q", vf_q, "Strategy profile")->required();
  vf->add_option("--kl-tol", vf_kl, "KL tolerance")->capture_default_str();
  vf->add_option("--br-tol", vf_br, "Best-response gap tolerance")->capture_default_str();
  add_common(vf, vf_c);

  // rate
  Common rt_c;
  std::string rt_config, rt_param, rt_seeds;
  std::optional<uint64_t> rt_seed;
  std::optional<std::size_t> rt_horizon;
  double rt_tail = 0.5;
  auto* rt = app.add_subcommand("rate", "Regress the log belief ratio against the stage");
  rt->add_option("config", rt_config, "Run config (YAML)")->required()->check(CLI::ExistingFile);
  rt->add_option("--param", rt_param, "Parameter id")->required();
  rt->add_option("--seed", rt_seed, "Override the config seed");
  rt->add_option("--seeds", rt_seeds, "Seed sweep: A:B (half-open) or a,b,c");
  rt->add_option("--horizon", rt_horizon, "Override the horizon");
  rt->add_option("--tail", rt_tail, "Fraction of the run used for the fit")->capture_default_str();
  add_common(rt, rt_c);

  // martingale-check
  Common mc_c;
  GameArgs mc_g;
  std::string mc_theta, mc_q;
  std::size_t mc_n = 100000;
  uint64_t mc_seed = 0;
  auto* mc = app.add_subcommand("martingale-check", "Monte Carlo check of the belief-ratio martingale");
  add_game(mc, mc_g);
  mc->add_option("--theta", mc_theta, "Belief")->required();
  mc->add_option("--q", mc_q, "Strategy profile")->required();
  mc->add_option("--samples", mc_n, "Number of samples")->capture_default_str();
  mc->add_option("--seed", mc_seed, "Seed")->capture_default_str();
  add_common(mc, mc_c);

  // stability local / global
  auto* st = app.add_subcommand("stability", "Stability experiments");
  st->require_subcommand(1);
  Common sl_c;
  std::string sl_manifest;
  auto* sl = st->add_subcommand("local", "Local stability experiment from a manifest");
  sl->add_option("manifest", sl_manifest, "Manifest (YAML)")->required()->check(CLI::ExistingFile);
  add_common(sl, sl_c);
  Common sg_c;
  GameArgs sg_g;
  std::size_t sg_res = 100;
  double sg_kl = 1e-9;
  auto* sg = st->add_subcommand("global", "Scan the belief simplex for fixed points");
  add_game(sg, sg_g);
  sg->add_option("--resolution", sg_res, "Simplex grid resolution")->capture_default_str();
  sg->add_option("--kl-tol", sg_kl, "KL tolerance")->capture_default_str();
  add_common(sg, sg_c);

  // thresholds
  Common th_c;
  std::string th_theta;
  double th_eps = 0.0, th_gamma = 0.0;
  std::size_t th_true = 0;
  auto* th = app.add_subcommand("thresholds", "Initial-neighborhood radii rho1, rho2, rho3");
  th->add_option("--theta", th_theta, "Fixed-point belief")->required();
  th->add_option("--epsilon-hat", th_eps, "Belief neighborhood radius")->required();
  th->add_option("--gamma", th_gamma, "Target probability")->required();
  th->add_option("--true-index", th_true, "Index of the true parameter")->capture_default_str();
  add_common(th, th_c);

  // complete-learning
  Common cl_c;
  GameArgs cl_g;
  std::string cl_theta, cl_q;
  double cl_xi = 0.1, cl_kl = 1e-9;
  std::size_t cl_probes = 1000;
  uint64_t cl_seed = 0;
  auto* cl = app.add_subcommand("complete-learning", "Sufficient check for complete learning");
  add_game(cl, cl_g);
  cl->add_option("--theta", cl_theta, "Fixed-point belief")->required();
  cl->add_option("--q", cl_q, "Fixed-point strategy")->required();
  cl->add_option("--xi", cl_xi, "Probe radius")->capture_default_str();
  cl->add_option("--probes", cl_probes, "Number of probes")->capture_default_str();
  cl->add_option("--seed", cl_seed, "Seed")->capture_default_str();
  cl->add_option("--kl-tol", cl_kl, "KL tolerance")->capture_default_str();
  add_common(cl, cl_c);

  // static-check
  Common sc_c;
  GameArgs sc_g;
  std::string sc_rule, sc_theta, sc_step = "constant";
  double sc_scale = 0.1, sc_tol = 1e-6;
  std::size_t sc_starts = 20, sc_max = 10000;
  uint64_t sc_seed = 0;
  auto* sc = app.add_subcommand("static-check", "Convergence of a learning rule under a fixed belief");
  add_game(sc, sc_g);
  sc->add_option("--rule", sc_rule, "simultaneous_br | sequential_br | inertial_br | no_regret")
      ->required();
  sc->add_option("--theta", sc_theta, "Belief (default: point mass on the true parameter)");
  sc->add_option("--step", sc_step, "constant | harmonic | inverse_sqrt")->capture_default_str();
  sc->add_option("--step-scale", sc_scale, "Step size scale")->capture_default_str();
  sc->add_option("--starts", sc_starts, "Random starts")->capture_default_str();
  sc->add_option("--max-steps", sc_max, "Steps per start")->capture_default_str();
  sc->add_option("--tol", sc_tol, "Utility-gap tolerance")->capture_default_str();
  sc->add_option("--seed", sc_seed, "Seed")->capture_default_str();
  add_common(sc, sc_c);

  // examples list / export
  auto* ex = app.add_subcommand("examples", "Builtin example games");
  ex->require_subcommand(1);
  Common el_c;
  auto* el = ex->add_subcommand("list", "List builtin games and their fixed points");
  add_common(el, el_c);
  std::string ee_name, ee_out;
  double ee_sigma = 1.0;
  auto* ee = ex->add_subcommand("export", "Print the run config of a builtin fixture");
  ee->add_option("name", ee_name, "Builtin game name")->required();
  ee->add_option("--sigma", ee_sigma, "Noise standard deviation")->capture_default_str();
  ee->add_option("--output", ee_out, "Write the config here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sim) {
      bgl_config* raw = nullptr;
      check(bgl_config_load(sim_config.c_str(), &raw));
      Handle<bgl_config> config(raw);
      if (sim_seed) check(bgl_config_set_seed(config.get(), *sim_seed));
      if (sim_horizon) check(bgl_config_set_horizon(config.get(), *sim_horizon));
      if (sim_every) check(bgl_config_set_record_every(config.get(), *sim_every));
      if (sim_kl) check(bgl_config_set_kl_tol(config.get(), *sim_kl));
      if (!sim_schedule.empty()) apply_schedule(config.get(), sim_schedule);
      const std::string traj_path =
          sim_traj.empty() ? bgl_config_trajectory_path(config.get()) : sim_traj;
      const std::string summary_path =
          sim_summary.empty() ? bgl_config_summary_path(config.get()) : sim_summary;
      if (!summary_path.empty() && sim_c.output.empty()) sim_c.output = summary_path;

      if (!sim_seeds.empty()) {
        const std::vector<uint64_t> seeds = parse_seeds(sim_seeds);
        bgl_report* r = nullptr;
        const bgl_status s = bgl_sweep(config.get(), seeds.data(), seeds.size(), cluster_tol,
                                       traj_path.empty() ? nullptr : traj_path.c_str(), &r);
        emit(sim_c, take(s, r).get());
        return 0;
      }
      bgl_trajectory* tr = nullptr;
      const bgl_status run_status = bgl_simulate(config.get(), &tr);
      Handle<bgl_trajectory> traj(tr);
      if (!traj) throw Failure{run_status};
      // A run that stopped early still leaves its partial trajectory.
      if (run_status != BGL_OK) report_error(run_status);
      if (!traj_path.empty()) {
        check(bgl_trajectory_write(traj.get(), traj_path.c_str(),
                                   bgl_config_record_every(config.get())));
      }
      bgl_report* r = nullptr;
      emit(sim_c, take(bgl_trajectory_summary(traj.get(), &r), r).get());
      return exit_code(run_status);
    }
    if (*eq) {
      auto game = open_game(eq_g);
      const auto theta = parse_vector(eq_theta);
      bgl_report* r = nullptr;
      emit(eq_c, take(bgl_equilibrium(game.get(), theta.data(), theta.size(), eq_tol,
                                      eq_starts, eq_seed, &r),
                      r).get());
      return 0;
    }
    if (*vf) {
      auto game = open_game(vf_g);
      const auto theta = parse_vector(vf_theta);
      const auto q = parse_vector(vf_q);
      bgl_report* r = nullptr;
      emit(vf_c, take(bgl_verify_fixed_point(game.get(), theta.data(), theta.size(), q.data(),
                                             q.size(), vf_kl, vf_br, &r),
                      r).get());
      return 0;
    }
    if (*rt) {
      bgl_config* raw = nullptr;
      check(bgl_config_load(rt_config.c_str(), &raw));
      Handle<bgl_config> config(raw);
      if (rt_seed) check(bgl_config_set_seed(config.get(), *rt_seed));
      if (rt_horizon) check(bgl_config_set_horizon(config.get(), *rt_horizon));
      bgl_report* r = nullptr;
      if (!rt_seeds.empty()) {
        const std::vector<uint64_t> seeds = parse_seeds(rt_seeds);
        emit(rt_c, take(bgl_rate_sweep(config.get(), seeds.data(), seeds.size(),
                                       rt_param.c_str(), rt_tail, &r),
                        r).get());
        return 0;
      }
      bgl_trajectory* tr = nullptr;
      const bgl_status run_status = bgl_simulate(config.get(), &tr);
      Handle<bgl_trajectory> traj(tr);
      check(run_status);
      emit(rt_c, take(bgl_trajectory_rate(traj.get(), rt_param.c_str(), rt_tail, &r), r).get());
      return 0;
    }
    if (*mc) {
      auto game = open_game(mc_g);
      const auto theta = parse_vector(mc_theta);
      const auto q = parse_vector(mc_q);
      bgl_report* r = nullptr;
      emit(mc_c, take(bgl_martingale_check(game.get(), theta.data(), theta.size(), q.data(),
                                           q.size(), mc_n, mc_seed, &r),
                      r).get());
      return 0;
    }
    if (*sl) {
      bgl_report* r = nullptr;
      emit(sl_c, take(bgl_stability_local(sl_manifest.c_str(), &r), r).get());
      return 0;
    }
    if (*sg) {
      auto game = open_game(sg_g);
      bgl_report* r = nullptr;
      emit(sg_c, take(bgl_stability_global(game.get(), sg_res, sg_kl, &r), r).get());
      return 0;
    }
    if (*th) {
      const auto theta = parse_vector(th_theta);
      bgl_report* r = nullptr;
      emit(th_c, take(bgl_thresholds(theta.data(), theta.size(), th_true, th_eps, th_gamma, &r),
                      r).get());
      return 0;
    }
    if (*cl) {
      auto game = open_game(cl_g);
      const auto theta = parse_vector(cl_theta);
      const auto q = parse_vector(cl_q);
      bgl_report* r = nullptr;
      emit(cl_c, take(bgl_complete_learning(game.get(), theta.data(), theta.size(), q.data(),
                                            q.size(), cl_xi, cl_probes, cl_seed, cl_kl, &r),
                      r).get());
      return 0;
    }
    if (*sc) {
      auto game = open_game(sc_g);
      std::vector<double> theta;
      if (!sc_theta.empty()) theta = parse_vector(sc_theta);
      bgl_report* r = nullptr;
      emit(sc_c, take(bgl_static_check(game.get(), sc_rule.c_str(), sc_step.c_str(), sc_scale,
                                       theta.empty() ? nullptr : theta.data(), theta.size(),
                                       sc_starts, sc_max, sc_tol, sc_seed, &r),
                      r).get());
      return 0;
    }
    if (*el) {
      bgl_report* r = nullptr;
      emit(el_c, take(bgl_examples_list(&r), r).get());
      return 0;
    }
    if (*ee) {
      bgl_config* raw = nullptr;
      check(bgl_config_fixture(ee_name.c_str(), ee_sigma, &raw));
      Handle<bgl_config> config(raw);
      if (ee_out.empty()) {
        std::cout << bgl_config_text(config.get());
      } else {
        check(bgl_config_save(config.get(), ee_out.c_str()));
      }
      return 0;
    }
  } catch (const Failure& f) {
    if (f.status != BGL_ERR_IO || bgl_last_error()[0] != '\0') report_error(f.status);
    return exit_code(f.status);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

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


#include "bgl/bgl.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "bgl/analysis.hpp"
#include "bgl/config.hpp"
#include "bgl/error.hpp"
#include "bgl/examples.hpp"
#include "bgl/parallel.hpp"
#include "bgl/report.hpp"

using nlohmann::json;

struct bgl_game {
  bgl::GameSpec spec;
};

struct bgl_config {
  bgl::RunConfig config;
  std::string text;
};

struct bgl_trajectory {
  bgl::GameSpec spec;
  bgl::RunConfig config;
  bgl::Trajectory traj;
};

struct bgl_report {
  std::string json;
  std::string text;
  int verdict = -1;
};

namespace {

thread_local std::string t_error;
thread_local std::string t_field;
thread_local int t_line = 0;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bgl_status status_of(bgl::ErrorKind kind) {
  switch (kind) {
    case bgl::ErrorKind::kConfig: return BGL_ERR_CONFIG;
    case bgl::ErrorKind::kDomain: return BGL_ERR_DOMAIN;
    case bgl::ErrorKind::kNumeric: return BGL_ERR_NUMERIC;
    case bgl::ErrorKind::kSolver: return BGL_ERR_SOLVER;
    case bgl::ErrorKind::kImpossibleEvidence: return BGL_ERR_IMPOSSIBLE_EVIDENCE;
    case bgl::ErrorKind::kInvariant: return BGL_ERR_INVARIANT;
    case bgl::ErrorKind::kUndefinedRate: return BGL_ERR_UNDEFINED_RATE;
    case bgl::ErrorKind::kIo: return BGL_ERR_IO;
  }
  return BGL_ERR_INTERNAL;
}

template <typename F>
bgl_status guarded(F&& fn) {
  t_error.clear();
  t_field.clear();
  t_line = 0;
  try {
    fn();
    return BGL_OK;
  } catch (const bgl::ConfigError& e) {
    t_error = e.what();
    t_field = e.field();
    t_line = e.line();
    return BGL_ERR_CONFIG;
  } catch (const bgl::Error& e) {
    t_error = e.what();
    return status_of(e.kind());
  } catch (const InvalidArgument& e) {
    t_error = e.what();
    return BGL_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    t_error = "out of memory";
    return BGL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    t_error = e.what();
    return BGL_ERR_INTERNAL;
  }
}

template <typename T>
T& deref(T* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " is NULL");
  return *p;
}

void require_out(const void* out) {
  if (!out) throw InvalidArgument("output pointer is NULL");
}

std::vector<double> array(const double* p, std::size_t n, const char* what) {
  if (!p && n > 0) throw InvalidArgument(std::string(what) + " is NULL");
  return std::vector<double>(p, p + n);
}

std::string string_arg(const char* s, const char* what) {
  if (!s) throw InvalidArgument(std::string(what) + " is NULL");
  return s;
}

bgl::Belief belief_arg(const bgl::GameSpec& spec, const double* theta,
                       std::size_t n) {
  const std::vector<double> p = array(theta, n, "theta");
  if (p.size() != spec.num_params()) {
    bgl::fail(bgl::ErrorKind::kConfig,
              "theta has " + std::to_string(p.size()) + " entries, game has " +
                  std::to_string(spec.num_params()) + " parameters");
  }
  return bgl::Belief::from_probabilities(p);
}

bgl::StrategyProfile profile_arg(const bgl::GameSpec& spec, const double* q,
                                 std::size_t n) {
  bgl::StrategyProfile v = array(q, n, "q");
  spec.check_feasible(v);
  return v;
}

std::size_t param_arg(const bgl::GameSpec& spec, const char* id) {
  const std::string label = string_arg(id, "parameter id");
  auto s = spec.params().index_of(label);
  if (!s) bgl::fail(bgl::ErrorKind::kConfig, "unknown parameter '" + label + "'");
  return *s;
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string per_seed_path(const std::string& path, uint64_t seed) {
  const std::string tag = std::to_string(seed);
  if (auto at = path.find("{seed}"); at != std::string::npos) {
    return path.substr(0, at) + tag + path.substr(at + 6);
  }
  const std::size_t slash = path.find_last_of('/');
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "-seed" + tag;
  }
  return path.substr(0, dot) + "-seed" + tag + path.substr(dot);
}

bgl_report* make_report(json j, std::string text, int verdict) {
  auto* r = new bgl_report;
  r->json = j.dump(2);
  r->text = std::move(text);
  r->verdict = verdict;
  return r;
}

// Everything the summary of one run reports.
json summary_json(const bgl_trajectory& t, std::string& text, int& verdict) {
  const bgl::GameSpec& spec = t.spec;
  const bgl::ToleranceConfig& tol = t.config.tolerances;
  json out = bgl::report_json(spec, t.traj.summary);
  out["seed"] = t.config.seed;
  out["horizon"] = t.config.horizon;
  text = bgl::report_text(spec, t.traj.summary);
  verdict = -1;
  out["converged_point"] = nullptr;
  if (t.traj.ok() && tol.convergence_window < t.traj.records.size()) {
    if (auto point = bgl::detect_convergence(t.traj, tol.convergence_window,
                                             tol.convergence_tol)) {
      const bgl::FixedPointReport fp = bgl::verify_fixed_point(
          spec, point->theta, point->q, tol.kl, tol.br, t.config.learner.solver);
      out["converged_point"] = {{"theta", bgl::belief_json(spec, point->theta)},
                                {"q", point->q},
                                {"stage", point->stage},
                                {"fixed_point", bgl::report_json(spec, fp)}};
      text += "converged point theta " +
              bgl::format_vector(point->theta.probabilities()) + " q " +
              bgl::format_vector(point->q) + "\n";
      text += std::string("fixed point     ") + (fp.is_fixed_point ? "yes" : "no") +
              (fp.is_complete_info ? " (complete information)" : "") + "\n";
      verdict = fp.is_fixed_point ? 1 : 0;
    }
  }
  json rates = json::array();
  for (std::size_t s = 0; s < spec.num_params(); ++s) {
    if (s == spec.true_index() || t.traj.records.size() < 2) continue;
    try {
      const bgl::RateEstimate est = bgl::estimate_rate(spec, t.traj, s, 0.5, tol.kl);
      rates.push_back(bgl::report_json(spec, est));
      text += "rate " + bgl::report_text(spec, est);
    } catch (const bgl::Error&) {
      // Equivalent at the final strategy: no decay to report.
    }
  }
  out["rates"] = rates;
  return out;
}

}  // namespace

extern "C" {

const char* bgl_version(void) { return "0.1.0"; }

const char* bgl_status_name(bgl_status status) {
  switch (status) {
    case BGL_OK: return "ok";
    case BGL_ERR_CONFIG: return "config";
    case BGL_ERR_DOMAIN: return "domain";
    case BGL_ERR_NUMERIC: return "numeric";
    case BGL_ERR_SOLVER: return "solver";
    case BGL_ERR_IMPOSSIBLE_EVIDENCE: return "impossible_evidence";
    case BGL_ERR_INVARIANT: return "invariant";
    case BGL_ERR_UNDEFINED_RATE: return "undefined_rate";
    case BGL_ERR_IO: return "io";
    case BGL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case BGL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int bgl_status_is_validation(bgl_status status) {
  return status == BGL_ERR_CONFIG || status == BGL_ERR_DOMAIN ||
         status == BGL_ERR_IO || status == BGL_ERR_INVALID_ARGUMENT;
}

const char* bgl_last_error(void) { return t_error.c_str(); }
const char* bgl_last_error_field(void) { return t_field.c_str(); }
int bgl_last_error_line(void) { return t_line; }

bgl_status bgl_game_builtin(const char* name, double sigma, bgl_game** out) {
  return guarded([&] {
    require_out(out);
    *out = new bgl_game{bgl::builtin_game(string_arg(name, "name"), sigma)};
  });
}

bgl_status bgl_game_from_config(const bgl_config* config, bgl_game** out) {
  return guarded([&] {
    require_out(out);
    *out = new bgl_game{deref(config, "config").config.game.build()};
  });
}

void bgl_game_free(bgl_game* game) { delete game; }

size_t bgl_game_num_players(const bgl_game* game) {
  return game ? game->spec.num_players() : 0;
}

size_t bgl_game_num_params(const bgl_game* game) {
  return game ? game->spec.num_params() : 0;
}

size_t bgl_game_true_index(const bgl_game* game) {
  return game ? game->spec.true_index() : 0;
}

const char* bgl_game_param_id(const bgl_game* game, size_t s) {
  if (!game || s >= game->spec.num_params()) return nullptr;
  return game->spec.params().id(s).c_str();
}

bgl_status bgl_game_param_index(const bgl_game* game, const char* id,
                                size_t* out) {
  return guarded([&] {
    require_out(out);
    *out = param_arg(deref(game, "game").spec, id);
  });
}

bgl_status bgl_expected_utility(const bgl_game* game, const double* theta,
                                size_t n_theta, size_t player,
                                const double* q, size_t n_q, double* out) {
  return guarded([&] {
    require_out(out);
    const bgl::GameSpec& spec = deref(game, "game").spec;
    if (player >= spec.num_players()) throw InvalidArgument("player out of range");
    *out = bgl::expected_utility(spec, belief_arg(spec, theta, n_theta), player,
                                 profile_arg(spec, q, n_q));
  });
}

bgl_status bgl_kl_divergence(const bgl_game* game, size_t s_from, size_t s_to,
                             const double* q, size_t n_q, double* out) {
  return guarded([&] {
    require_out(out);
    const bgl::GameSpec& spec = deref(game, "game").spec;
    *out = bgl::kl_divergence(spec, s_from, s_to, profile_arg(spec, q, n_q));
  });
}

bgl_status bgl_config_load(const char* path, bgl_config** out) {
  return guarded([&] {
    require_out(out);
    *out = new bgl_config{bgl::load_config(string_arg(path, "path")), {}};
  });
}

bgl_status bgl_config_parse(const char* text, bgl_config** out) {
  return guarded([&] {
    require_out(out);
    *out = new bgl_config{bgl::parse_config(string_arg(text, "text")), {}};
  });
}

bgl_status bgl_config_fixture(const char* name, double sigma,
                              bgl_config** out) {
  return guarded([&] {
    require_out(out);
    *out = new bgl_config{bgl::fixture_config(string_arg(name, "name"), sigma), {}};
  });
}

bgl_status bgl_config_save(const bgl_config* config, const char* path) {
  return guarded([&] {
    bgl::save_config(deref(config, "config").config, string_arg(path, "path"));
  });
}

const char* bgl_config_text(bgl_config* config) {
  if (!config) return nullptr;
  config->text = bgl::dump_config(config->config);
  return config->text.c_str();
}

int bgl_config_equal(const bgl_config* a, const bgl_config* b) {
  return a && b && a->config == b->config;
}

bgl_status bgl_config_set_seed(bgl_config* config, uint64_t seed) {
  return guarded([&] { deref(config, "config").config.seed = seed; });
}

bgl_status bgl_config_set_horizon(bgl_config* config, size_t horizon) {
  return guarded([&] {
    if (horizon < 1) throw bgl::ConfigError("horizon", "must be >= 1");
    deref(config, "config").config.horizon = horizon;
  });
}

bgl_status bgl_config_set_record_every(bgl_config* config, size_t n) {
  return guarded([&] {
    if (n < 1) throw bgl::ConfigError("record_every", "must be >= 1");
    deref(config, "config").config.output.record_every = n;
  });
}

bgl_status bgl_config_set_schedule(bgl_config* config, const char* kind,
                                   double param) {
  return guarded([&] {
    bgl::RunConfig& c = deref(config, "config").config;
    const std::string name = string_arg(kind, "kind");
    auto k = bgl::parse_schedule_kind(name);
    if (!k) throw bgl::ConfigError("schedule.kind", "unknown schedule '" + name + "'");
    bgl::UpdateSchedule s;
    s.kind = *k;
    if (*k == bgl::UpdateSchedule::Kind::kEveryN) {
      if (!(param >= 1.0) || param != std::floor(param)) {
        throw bgl::ConfigError("schedule.n", "must be an integer >= 1");
      }
      s.every = static_cast<std::size_t>(param);
    } else if (*k == bgl::UpdateSchedule::Kind::kTwoTimescale) {
      s.growth = param;
    }
    s.validate();
    c.schedule = s;
  });
}

bgl_status bgl_config_set_kl_tol(bgl_config* config, double kl_tol) {
  return guarded([&] {
    if (!(kl_tol > 0.0)) throw bgl::ConfigError("tolerances.kl", "must be > 0");
    deref(config, "config").config.tolerances.kl = kl_tol;
  });
}

const char* bgl_config_trajectory_path(const bgl_config* config) {
  return config ? config->config.output.trajectory.c_str() : "";
}

const char* bgl_config_summary_path(const bgl_config* config) {
  return config ? config->config.output.summary.c_str() : "";
}

size_t bgl_config_record_every(const bgl_config* config) {
  return config ? config->config.output.record_every : 1;
}

void bgl_config_free(bgl_config* config) { delete config; }

bgl_status bgl_simulate(const bgl_config* config, bgl_trajectory** out) {
  std::unique_ptr<bgl_trajectory> result;
  bgl_status st = guarded([&] {
    require_out(out);
    *out = nullptr;
    const bgl::RunConfig& c = deref(config, "config").config;
    bgl::GameSpec spec = c.game.build();
    bgl::Trajectory traj = bgl::run_config(c, spec);
    result.reset(new bgl_trajectory{std::move(spec), c, std::move(traj)});
  });
  if (st != BGL_OK) return st;
  const bgl::TrajectorySummary& s = result->traj.summary;
  *out = result.release();
  if (s.error_kind) {
    t_error = s.error;
    return status_of(*s.error_kind);
  }
  return BGL_OK;
}

size_t bgl_trajectory_length(const bgl_trajectory* traj) {
  return traj ? traj->traj.records.size() : 0;
}

bgl_status bgl_trajectory_state(const bgl_trajectory* traj, size_t index,
                                double* theta, size_t n_theta, double* q,
                                size_t n_q) {
  return guarded([&] {
    const bgl_trajectory& t = deref(traj, "trajectory");
    if (index >= t.traj.records.size()) throw InvalidArgument("index out of range");
    const bgl::StageRecord& rec = t.traj.records[index];
    if (theta) {
      if (n_theta != rec.theta.size()) throw InvalidArgument("theta buffer size mismatch");
      const std::vector<double> p = rec.theta.probabilities();
      std::copy(p.begin(), p.end(), theta);
    }
    if (q) {
      if (n_q != rec.q.size()) throw InvalidArgument("q buffer size mismatch");
      std::copy(rec.q.begin(), rec.q.end(), q);
    }
  });
}

bgl_status bgl_trajectory_write(const bgl_trajectory* traj, const char* path,
                                size_t record_every) {
  return guarded([&] {
    const bgl_trajectory& t = deref(traj, "trajectory");
    bgl::write_trajectory_file(string_arg(path, "path"), t.spec, t.traj,
                               record_every);
  });
}

bgl_status bgl_trajectory_summary(const bgl_trajectory* traj,
                                  bgl_report** out) {
  return guarded([&] {
    require_out(out);
    std::string text;
    int verdict = -1;
    json j = summary_json(deref(traj, "trajectory"), text, verdict);
    *out = make_report(std::move(j), std::move(text), verdict);
  });
}

bgl_status bgl_trajectory_rate(const bgl_trajectory* traj,
                               const char* param_id, double tail_fraction,
                               bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl_trajectory& t = deref(traj, "trajectory");
    const bgl::RateEstimate est = bgl::estimate_rate(
        t.spec, t.traj, param_arg(t.spec, param_id), tail_fraction,
        t.config.tolerances.kl);
    *out = make_report(bgl::report_json(t.spec, est), bgl::report_text(t.spec, est), -1);
  });
}

void bgl_trajectory_free(bgl_trajectory* traj) { delete traj; }

bgl_status bgl_sweep(const bgl_config* config, const uint64_t* seeds,
                     size_t n_seeds, double cluster_tol,
                     const char* trajectory_path, bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl::RunConfig& base = deref(config, "config").config;
    if (!seeds || n_seeds == 0) throw InvalidArgument("no seeds given");
    if (!(cluster_tol > 0.0)) throw InvalidArgument("cluster tolerance must be > 0");
    const bgl::GameSpec spec = base.game.build();
    struct Result {
      bgl::TrajectorySummary summary;
    };
    std::vector<Result> results(n_seeds);
    bgl::parallel_for(n_seeds, [&](std::size_t r) {
      bgl::RunConfig c = base;
      c.seed = seeds[r];
      const bgl::Trajectory traj = bgl::run_config(c, spec);
      if (trajectory_path) {
        bgl::write_trajectory_file(per_seed_path(trajectory_path, seeds[r]), spec,
                                   traj, c.output.record_every);
      }
      results[r].summary = traj.summary;
    });

    struct Cluster {
      bgl::Belief theta;
      bgl::StrategyProfile q;
      std::vector<uint64_t> seeds;
    };
    std::vector<Cluster> clusters;
    json runs = json::array();
    std::size_t failed = 0, converged = 0;
    for (std::size_t r = 0; r < n_seeds; ++r) {
      const bgl::TrajectorySummary& s = results[r].summary;
      json jr = bgl::report_json(spec, s);
      jr["seed"] = seeds[r];
      runs.push_back(std::move(jr));
      if (s.error_kind) {
        ++failed;
        continue;
      }
      if (s.convergence_stage) ++converged;
      auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
        double dq = 0.0;
        for (std::size_t i = 0; i < c.q.size(); ++i) {
          dq += (c.q[i] - s.final_strategy[i]) * (c.q[i] - s.final_strategy[i]);
        }
        return bgl::distance(c.theta, s.final_belief) < cluster_tol &&
               std::sqrt(dq) < cluster_tol;
      });
      if (it == clusters.end()) {
        clusters.push_back({s.final_belief, s.final_strategy, {seeds[r]}});
      } else {
        it->seeds.push_back(seeds[r]);
      }
    }
    json jc = json::array();
    std::string text = std::to_string(n_seeds) + " runs, " +
                       std::to_string(converged) + " with detected convergence, " +
                       std::to_string(failed) + " failed\n" +
                       std::to_string(clusters.size()) +
                       " distinct final state(s) within " + number(cluster_tol) + ":\n";
    for (const Cluster& c : clusters) {
      jc.push_back({{"theta", bgl::belief_json(spec, c.theta)},
                    {"q", c.q},
                    {"count", c.seeds.size()},
                    {"seeds", c.seeds}});
      text += "  " + std::to_string(c.seeds.size()) + " x theta " +
              bgl::format_vector(c.theta.probabilities()) + " q " +
              bgl::format_vector(c.q) + "\n";
    }
    json j = {{"report", "sweep"},
              {"game", spec.name()},
              {"runs", runs},
              {"clusters", jc},
              {"failed", failed},
              {"converged", converged},
              {"cluster_tol", cluster_tol}};
    *out = make_report(std::move(j), std::move(text), failed == 0 ? 1 : 0);
  });
}

bgl_status bgl_rate_sweep(const bgl_config* config, const uint64_t* seeds,
                          size_t n_seeds, const char* param_id,
                          double tail_fraction, bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl::RunConfig& base = deref(config, "config").config;
    if (!seeds || n_seeds == 0) throw InvalidArgument("no seeds given");
    const bgl::GameSpec spec = base.game.build();
    const std::size_t s = param_arg(spec, param_id);
    if (s == spec.true_index()) {
      bgl::fail(bgl::ErrorKind::kUndefinedRate, "the true parameter has no decay rate");
    }
    struct Result {
      std::optional<bgl::RateEstimate> est;
      std::string skipped;
    };
    std::vector<Result> results(n_seeds);
    bgl::parallel_for(n_seeds, [&](std::size_t r) {
      bgl::RunConfig c = base;
      c.seed = seeds[r];
      const bgl::Trajectory traj = bgl::run_config(c, spec);
      if (!traj.ok()) {
        results[r].skipped = traj.summary.error;
        return;
      }
      try {
        results[r].est = bgl::estimate_rate(spec, traj, s, tail_fraction, c.tolerances.kl);
      } catch (const bgl::Error& e) {
        results[r].skipped = e.what();
      }
    });
    json per_seed = json::array();
    std::string text;
    double lo = INFINITY, hi = -INFINITY, sum = 0.0, predicted = 0.0;
    std::size_t used = 0;
    for (std::size_t r = 0; r < n_seeds; ++r) {
      if (results[r].est) {
        const bgl::RateEstimate& e = *results[r].est;
        json j = bgl::report_json(spec, e);
        j["seed"] = seeds[r];
        per_seed.push_back(std::move(j));
        lo = std::min(lo, e.slope);
        hi = std::max(hi, e.slope);
        sum += e.slope;
        predicted = e.predicted_slope;
        ++used;
        text += "seed " + std::to_string(seeds[r]) + ": " + bgl::report_text(spec, e);
      } else {
        per_seed.push_back({{"seed", seeds[r]}, {"skipped", results[r].skipped}});
        text += "seed " + std::to_string(seeds[r]) + ": skipped (" + results[r].skipped + ")\n";
      }
    }
    json j = {{"report", "rate_sweep"},
              {"param", spec.params().id(s)},
              {"tail_fraction", tail_fraction},
              {"seeds", per_seed},
              {"used", used}};
    if (used > 0) {
      const double mean = sum / static_cast<double>(used);
      j["mean_slope"] = mean;
      j["predicted_slope"] = predicted;
      j["relative_spread"] = (hi - lo) / std::abs(mean);
      j["relative_error"] = std::abs(mean - predicted) / std::abs(predicted);
      text += "mean slope " + number(mean) + " vs predicted " + number(predicted) +
              ", spread " + number((hi - lo) / std::abs(mean)) + " over " +
              std::to_string(used) + " seed(s)\n";
    }
    *out = make_report(std::move(j), std::move(text), -1);
  });
}

bgl_status bgl_equilibrium(const bgl_game* game, const double* theta,
                           size_t n_theta, double tol, int starts,
                           uint64_t seed, bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl::GameSpec& spec = deref(game, "game").spec;
    const bgl::Belief b = belief_arg(spec, theta, n_theta);
    bgl::EquilibriumOptions opts;
    opts.tol = tol;
    opts.starts = starts;
    opts.seed = seed;
    const bgl::EquilibriumResult r = bgl::solve_equilibrium(spec, b, opts);
    *out = make_report(bgl::report_json(spec, b, r), bgl::report_text(spec, b, r),
                       r.equilibria.empty() ? 0 : 1);
  });
}

bgl_status bgl_verify_fixed_point(const bgl_game* game, const double* theta,
                                  size_t n_theta, const double* q, size_t n_q,
                                  double kl_tol, double br_tol,
                                  bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl::GameSpec& spec = deref(game, "game").spec;
    const bgl::FixedPointReport r = bgl::verify_fixed_point(
        spec, belief_arg(spec, theta, n_theta), profile_arg(spec, q, n_q), kl_tol, br_tol);
    *out = make_report(bgl::report_json(spec, r), bgl::report_text(spec, r),
                       r.is_fixed_point ? 1 : 0);
  });
}

bgl_status bgl_martingale_check(const bgl_game* game, const double* theta,
                                size_t n_theta, const double* q, size_t n_q,
                                size_t n_samples, uint64_t seed,
                                bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl::GameSpec& spec = deref(game, "game").spec;
    const bgl::MartingaleReport r = bgl::martingale_check(
        spec, belief_arg(spec, theta, n_theta), profile_arg(spec, q, n_q), n_samples, seed);
    *out = make_report(bgl::report_json(spec, r), bgl::report_text(spec, r), r.pass ? 1 : 0);
  });
}

bgl_status bgl_stability_local(const char* manifest_path, bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl::StabilityManifest m = bgl::load_manifest(string_arg(manifest_path, "path"));
    const bgl::GameSpec spec = m.game.build();
    const bgl::Belief theta_bar = bgl::Belief::from_probabilities(m.theta_bar);
    std::vector<bgl::StrategyProfile> eq_set = m.eq_set;
    if (eq_set.empty()) {
      eq_set = bgl::solve_equilibrium(spec, theta_bar).equilibria;
      if (eq_set.empty()) {
        throw bgl::ConfigError("eq_set", "no equilibrium found for theta_bar; list eq_set explicitly");
      }
    }
    json reports = json::array();
    std::string text;
    bool all = true;
    for (double gamma : m.gamma) {
      for (double eps_bar : m.eps_bar) {
        for (double eps_x : m.eps_x) {
          for (const std::optional<double>& eps1 : m.eps1) {
            for (double delta1 : m.delta1) {
              bgl::StabilityParams p;
              p.gamma = gamma;
              p.eps_bar = eps_bar;
              p.eps_x = eps_x;
              p.eps1 = eps1 ? *eps1
                            : bgl::stability_thresholds(theta_bar, eps_bar, gamma,
                                                        spec.true_index())
                                  .epsilon1();
              p.delta1 = delta1;
              p.n_runs = m.n_runs;
              p.horizon = m.horizon;
              p.seed = m.seed;
              if (m.escape_theta) {
                p.escape_theta = bgl::Belief::from_probabilities(*m.escape_theta);
                p.escape_q = *m.escape_q;
                p.escape_radius = m.escape_radius;
              }
              const bgl::StabilityReport r = bgl::local_stability_experiment(
                  spec, m.learner, m.schedule, theta_bar, eq_set, p);
              json j = bgl::report_json(r);
              j["eps1_source"] = eps1 ? "manifest" : "thresholds";
              reports.push_back(std::move(j));
              if (!text.empty()) text += "\n";
              text += bgl::report_text(r);
              all = all && r.exceeds_gamma;
            }
          }
        }
      }
    }
    json j = {{"report", "local_stability_grid"},
              {"game", spec.name()},
              {"theta_bar", bgl::belief_json(spec, theta_bar)},
              {"eq_set", eq_set},
              {"experiments", reports}};
    *out = make_report(std::move(j), std::move(text), all ? 1 : 0);
  });
}

bgl_status bgl_stability_global(const bgl_game* game, size_t resolution,
                                double kl_tol, bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl::GameSpec& spec = deref(game, "game").spec;
    const bgl::GlobalScanReport r = bgl::global_stability_scan(spec, resolution, kl_tol);
    *out = make_report(bgl::report_json(spec, r), bgl::report_text(spec, r),
                       r.no_violation_found() ? 1 : 0);
  });
}

bgl_status bgl_thresholds(const double* theta, size_t n_theta,
                          size_t true_index, double epsilon_hat, double gamma,
                          bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl::Belief b = bgl::Belief::from_probabilities(array(theta, n_theta, "theta"));
    const bgl::Thresholds t = bgl::stability_thresholds(b, epsilon_hat, gamma, true_index);
    *out = make_report(bgl::report_json(t), bgl::report_text(t),
                       t.ratio_interval_nonempty ? 1 : 0);
  });
}

bgl_status bgl_complete_learning(const bgl_game* game, const double* theta,
                                 size_t n_theta, const double* q, size_t n_q,
                                 double xi, size_t n_probe, uint64_t seed,
                                 double kl_tol, bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl::GameSpec& spec = deref(game, "game").spec;
    const bgl::CompleteLearningReport r = bgl::complete_learning_check(
        spec, belief_arg(spec, theta, n_theta), profile_arg(spec, q, n_q), xi,
        n_probe, seed, kl_tol);
    *out = make_report(bgl::report_json(spec, r), bgl::report_text(spec, r),
                       r.verdict == bgl::LearningVerdict::kComplete ? 1 : 0);
  });
}

bgl_status bgl_static_check(const bgl_game* game, const char* rule,
                            const char* step_kind, double step_scale,
                            const double* theta, size_t n_theta, size_t starts,
                            size_t max_steps, double tol, uint64_t seed,
                            bgl_report** out) {
  return guarded([&] {
    require_out(out);
    const bgl::GameSpec& spec = deref(game, "game").spec;
    bgl::LearnerConfig learner;
    const std::string rule_name = string_arg(rule, "rule");
    auto r = bgl::parse_update_rule(rule_name);
    if (!r) throw bgl::ConfigError("rule", "unknown rule '" + rule_name + "'");
    learner.rule = *r;
    if (step_kind) {
      auto k = bgl::parse_step_kind(step_kind);
      if (!k) throw bgl::ConfigError("step", "unknown step schedule '" + std::string(step_kind) + "'");
      learner.step.kind = *k;
    }
    learner.step.scale = step_scale;
    const bgl::Belief b = theta ? belief_arg(spec, theta, n_theta)
                                : bgl::Belief::point_mass(spec.num_params(), spec.true_index());
    const bgl::StaticConvergenceReport rep =
        bgl::static_convergence_check(spec, learner, b, starts, max_steps, tol, seed);
    json j = bgl::report_json(spec, rep);
    j["theta"] = bgl::belief_json(spec, b);
    *out = make_report(std::move(j), bgl::report_text(spec, rep), rep.pass() ? 1 : 0);
  });
}

bgl_status bgl_examples_list(bgl_report** out) {
  return guarded([&] {
    require_out(out);
    json list = json::array();
    std::string text;
    for (const std::string& name : bgl::builtin_game_names()) {
      const bgl::ExampleFixture fx = bgl::build_fixture(name);
      json fps = json::array();
      for (const bgl::KnownFixedPoint& fp : fx.fixed_points) {
        fps.push_back({{"theta", bgl::belief_json(fx.spec, fp.theta)},
                       {"q", fp.q},
                       {"complete_info", fp.complete_info}});
      }
      list.push_back({{"name", name},
                      {"players", fx.spec.num_players()},
                      {"params", fx.spec.params().ids()},
                      {"true_param", fx.spec.params().id(fx.spec.true_index())},
                      {"fixed_points", fps},
                      {"global_verdict", bgl::to_string(fx.verdict)}});
      text += name + "  params {";
      for (std::size_t s = 0; s < fx.spec.num_params(); ++s) {
        text += (s ? ", " : "") + fx.spec.params().id(s);
      }
      text += "}  true " + fx.spec.params().id(fx.spec.true_index()) + "  " +
              bgl::to_string(fx.verdict) + "\n";
      for (const bgl::KnownFixedPoint& fp : fx.fixed_points) {
        text += "    theta " + bgl::format_vector(fp.theta.probabilities()) + " q " +
                bgl::format_vector(fp.q) + (fp.complete_info ? "  complete" : "") + "\n";
      }
    }
    *out = make_report({{"report", "examples"}, {"games", list}}, std::move(text), -1);
  });
}

const char* bgl_report_json(const bgl_report* report) {
  return report ? report->json.c_str() : nullptr;
}

const char* bgl_report_text(const bgl_report* report) {
  return report ? report->text.c_str() : nullptr;
}

int bgl_report_verdict(const bgl_report* report) {
  return report ? report->verdict : -1;
}

void bgl_report_free(bgl_report* report) { delete report; }

}  // extern "C"

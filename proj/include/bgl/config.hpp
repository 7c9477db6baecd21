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


#ifndef BGL_CONFIG_HPP_
#define BGL_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bgl/analysis.hpp"
#include "bgl/dynamics.hpp"
#include "bgl/game.hpp"
#include "bgl/learners.hpp"
#include "bgl/polynomial.hpp"

namespace bgl {

struct GenericParamConfig {
  std::string id;
  bool concave = false;
  // payoffs[i] lists the monomials of player i's payoff.
  std::vector<std::vector<Monomial>> payoffs;
  friend bool operator==(const GenericParamConfig&,
                         const GenericParamConfig&) = default;
};

struct GenericGameConfig {
  std::string name = "generic";
  std::vector<Interval> players;
  std::vector<GenericParamConfig> params;
  std::string true_param;
  friend bool operator==(const GenericGameConfig&,
                         const GenericGameConfig&) = default;
};

// Exactly one of `builtin` and `generic` is set.
struct GameConfig {
  std::optional<std::string> builtin;
  std::optional<GenericGameConfig> generic;
  double sigma = 1.0;

  GameSpec build() const;
  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

// A start that is either given explicitly or drawn from the run's seed.
struct InitialValue {
  bool random = false;
  std::vector<double> values;
  friend bool operator==(const InitialValue&, const InitialValue&) = default;
};

struct OutputConfig {
  std::string trajectory;  // empty: not written
  std::string summary;     // empty: not written
  std::size_t record_every = 1;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ToleranceConfig {
  double kl = kDefaultKlTolerance;
  double br = 1e-8;
  std::size_t convergence_window = 500;
  double convergence_tol = 1e-6;
  friend bool operator==(const ToleranceConfig&,
                         const ToleranceConfig&) = default;
};

struct RunConfig {
  GameConfig game;
  LearnerConfig learner;
  UpdateSchedule schedule;
  InitialValue init_theta;
  InitialValue init_q;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  bool allow_zero_support = false;
  OutputConfig output;
  ToleranceConfig tolerances;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Parses and validates a YAML run configuration. Unknown fields, missing
// mandatory fields (horizon, seed) and violated invariants throw
// ConfigError with the field path and source line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string dump_config(const RunConfig& config);
void save_config(const RunConfig& config, const std::string& path);

// Initial state of a run. Random starts draw a Dirichlet(1) belief and a
// uniform strategy from a stream reserved for initialization.
struct InitialState {
  Belief theta = Belief::uniform(1);
  StrategyProfile q;
};
InitialState initial_state(const RunConfig& config, const GameSpec& spec);

Trajectory run_config(const RunConfig& config, const GameSpec& spec);

// Run configuration reproducing a builtin fixture: sequential best response
// from a uniform belief and the midpoint of Q.
RunConfig fixture_config(const std::string& name, double sigma = 1.0);

// Experiment manifest for local stability: each grid entry is a list and
// the experiment runs once per combination. eps1 entries may be the string
// "thresholds", meaning min(rho1, rho3) with epsilon_hat = eps_bar.
struct StabilityManifest {
  GameConfig game;
  LearnerConfig learner;
  UpdateSchedule schedule;
  std::vector<double> theta_bar;
  std::vector<StrategyProfile> eq_set;  // empty: solved from theta_bar
  std::vector<double> gamma{0.9};
  std::vector<double> eps_bar{0.1};
  std::vector<double> eps_x{0.1};
  std::vector<std::optional<double>> eps1{std::nullopt};
  std::vector<double> delta1{0.05};
  std::size_t n_runs = 200;
  std::size_t horizon = 2000;
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> escape_theta;
  std::optional<StrategyProfile> escape_q;
  double escape_radius = 1e-2;
};

StabilityManifest parse_manifest(const std::string& text);
StabilityManifest load_manifest(const std::string& path);

// Columnar trajectory file: a '#' header naming the columns, then one CSV
// row per recorded stage with 17 significant digits. Every record_every-th
// stage is kept, and the last one always.
void write_trajectory(std::ostream& out, const GameSpec& spec,
                      const Trajectory& traj, std::size_t record_every = 1);
void write_trajectory_file(const std::string& path, const GameSpec& spec,
                           const Trajectory& traj, std::size_t record_every = 1);

struct TrajectoryTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
TrajectoryTable read_trajectory(std::istream& in);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace bgl

#endif  // BGL_CONFIG_HPP_

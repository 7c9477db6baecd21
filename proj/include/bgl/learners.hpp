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

#ifndef BGL_LEARNERS_HPP_
#define BGL_LEARNERS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bgl/belief.hpp"
#include "bgl/game.hpp"

namespace bgl {

enum class UpdateRule { kSimultaneousBr, kSequentialBr, kInertialBr, kNoRegret };

const char* to_string(UpdateRule rule);
std::optional<UpdateRule> parse_update_rule(std::string_view name);

// alpha^k for k >= 1: scale, scale / k, or scale / sqrt(k).
struct StepSchedule {
  enum class Kind { kConstant, kHarmonic, kInverseSqrt };
  Kind kind = Kind::kConstant;
  double scale = 0.1;

  double at(std::size_t k) const;
  friend bool operator==(const StepSchedule&, const StepSchedule&) = default;
};

const char* to_string(StepSchedule::Kind kind);
std::optional<StepSchedule::Kind> parse_step_kind(std::string_view name);

struct SolverOptions {
  double inner_tol = 1e-10;
  int inner_max_iter = 100;
  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

struct LearnerConfig {
  UpdateRule rule = UpdateRule::kSequentialBr;
  StepSchedule step;
  // Only the euclidean regularizer h(q) = q^2 / 2 is supported.
  std::string regularizer = "euclidean";
  SolverOptions solver;

  void validate() const;
  friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

// Mirror-ascent scores, one per player.
struct ScoreState {
  std::vector<double> x;
};

// Whether the (game, rule) pair is one with a known static-belief
// convergence guarantee. Other pairs run, with a warning.
bool is_listed_pairing(PayoffKind game, UpdateRule rule);

// Maximizes f on [lo, hi] given its derivative: every sign change + -> - of
// df on a 256-cell grid is refined by bisection to `inner_tol`, then the
// candidates and both endpoints are compared. Ties go to the smallest
// maximizer. Throws kSolver when bisection needs more than inner_max_iter
// steps.
double maximize_on_interval(const std::function<double(double)>& f,
                            const std::function<double(double)>& df,
                            const Interval& set, const SolverOptions& opts);

// argmax over player i's interval of E_theta[u_i^s(q_i, q_-i)]. The entry
// q[i] is ignored.
double best_response(const GameSpec& spec, const Belief& theta, std::size_t i,
                     std::span<const double> q,
                     const SolverOptions& opts = {});

// E_theta[u_i(BR_i, q_-i)] - E_theta[u_i(q)].
double best_response_gap(const GameSpec& spec, const Belief& theta,
                         std::size_t i, std::span<const double> q,
                         const SolverOptions& opts = {});

StrategyProfile step_simultaneous_br(const GameSpec& spec, const Belief& theta,
                                     std::span<const double> q,
                                     const SolverOptions& opts = {});

// Stage k >= 1 updates player (k - 1) mod n.
StrategyProfile step_sequential_br(const GameSpec& spec, const Belief& theta,
                                   std::span<const double> q, std::size_t k,
                                   const SolverOptions& opts = {});

StrategyProfile step_inertial_br(const GameSpec& spec, const Belief& theta,
                                 std::span<const double> q, double alpha,
                                 const SolverOptions& opts = {});

// Projected gradient ascent on the scores; returns the new strategy and
// the new scores.
std::pair<StrategyProfile, ScoreState> step_no_regret(
    const GameSpec& spec, const Belief& theta, std::span<const double> q,
    const ScoreState& scores, double alpha);

// One application of the configured rule at stage k.
StrategyProfile learner_step(const GameSpec& spec, const LearnerConfig& config,
                             const Belief& theta, std::span<const double> q,
                             std::size_t k, ScoreState& scores);

struct EquilibriumOptions {
  double tol = 1e-10;  // max_i |BR_i(q) - q_i| at convergence
  int max_rounds = 1000;
  int starts = 8;  // corners, midpoint, then uniform random profiles
  std::uint64_t seed = 0;
  SolverOptions solver;
};

struct EquilibriumResult {
  std::vector<StrategyProfile> equilibria;
  int converged_starts = 0;
  int total_starts = 0;
  std::vector<std::string> warnings;
};

// Sequential best-response sweeps from several starts; converged points
// closer than 10 * tol are merged.
EquilibriumResult solve_equilibrium(const GameSpec& spec, const Belief& theta,
                                    const EquilibriumOptions& opts = {});

// max_i |BR_i(q) - q_i|.
double best_response_displacement(const GameSpec& spec, const Belief& theta,
                                  std::span<const double> q,
                                  const SolverOptions& opts = {});

}  // namespace bgl

#endif  // BGL_LEARNERS_HPP_

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


#ifndef BGL_ANALYSIS_HPP_
#define BGL_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bgl/belief.hpp"
#include "bgl/dynamics.hpp"
#include "bgl/game.hpp"
#include "bgl/learners.hpp"

namespace bgl {

struct FixedPointReport {
  std::vector<std::size_t> support;
  std::vector<std::size_t> payoff_equivalent;
  bool support_subset_ok = false;
  // Expected-utility gain of a best response over q_i, per player.
  std::vector<double> br_residual;
  bool is_equilibrium = false;
  bool is_complete_info = false;
  bool is_fixed_point = false;
  double kl_tol = 0.0;
  double br_tol = 0.0;
};

// Checks [theta] within S*(q) and q in EQ(theta).
FixedPointReport verify_fixed_point(const GameSpec& spec, const Belief& theta,
                                    const StrategyProfile& q,
                                    double kl_tol = kDefaultKlTolerance,
                                    double br_tol = 1e-8,
                                    const SolverOptions& solver = {});

struct RateEstimate {
  std::size_t param = 0;
  double slope = 0.0;
  double intercept = 0.0;
  // -KL(s*, s) at the final strategy.
  double predicted_slope = 0.0;
  std::size_t first_stage = 0;
  std::size_t points = 0;
};

// Least-squares slope of log theta^k(s) over the last `tail_fraction` of
// the records. Throws kUndefinedRate when s is payoff-equivalent to s* at
// the final strategy or its weight is already -inf.
RateEstimate estimate_rate(const GameSpec& spec, const Trajectory& traj,
                           std::size_t s, double tail_fraction = 0.5,
                           double kl_tol = kDefaultKlTolerance);

struct MartingaleEntry {
  std::size_t param = 0;
  double current_ratio = 0.0;
  double mean_next_ratio = 0.0;
  double standard_error = 0.0;
  bool pass = false;
};

struct MartingaleReport {
  std::size_t samples = 0;
  double se_band = 4.0;
  std::vector<MartingaleEntry> entries;
  bool pass = false;
};

// Monte-Carlo estimate of E[theta'(s) / theta'(s*)] after one observation
// at q, against the current ratio.
MartingaleReport martingale_check(const GameSpec& spec, const Belief& theta,
                                  const StrategyProfile& q,
                                  std::size_t n_samples, std::uint64_t seed);

struct StabilityParams {
  double gamma = 0.9;
  double eps_bar = 0.1;   // belief neighborhood radius
  double eps_x = 0.1;     // strategy neighborhood radius around EQ
  double eps1 = 0.0;      // initial belief radius
  double delta1 = 0.0;    // initial strategy radius
  std::size_t n_runs = 200;
  std::size_t horizon = 2000;
  std::uint64_t seed = 0;
  // Optional target for counting runs that end near another fixed point.
  std::optional<Belief> escape_theta;
  std::optional<StrategyProfile> escape_q;
  double escape_radius = 1e-2;
};

struct StabilityReport {
  StabilityParams params;
  std::size_t n_runs = 0;
  std::size_t failed_runs = 0;
  // Runs whose final state lies in both neighborhoods.
  double final_neighborhood_fraction = 0.0;
  // Runs whose whole path stays in both neighborhoods.
  double containment_fraction = 0.0;
  std::optional<double> escape_fraction;
  bool exceeds_gamma = false;
};

// Starts n_runs trajectories from theta uniform in the eps1-ball around
// theta_bar within the simplex and q uniform in the delta1-ball around a
// random member of eq_set within Q. The limit in probability is truncated
// at the horizon.
StabilityReport local_stability_experiment(
    const GameSpec& spec, const LearnerConfig& learner,
    const UpdateSchedule& schedule, const Belief& theta_bar,
    const std::vector<StrategyProfile>& eq_set, const StabilityParams& params);

struct Thresholds {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho3 = 0.0;
  // Suprema before the 0.99 safety factor.
  double rho1_bound = 0.0;
  double rho3_bound = 0.0;
  // rho1 < rho2 * theta_bar(s*) / (1 + rho2).
  bool ratio_interval_nonempty = false;
  double epsilon1() const { return rho1 < rho3 ? rho1 : rho3; }
};

// Upcrossing thresholds for the belief neighborhood of theta_bar.
Thresholds stability_thresholds(const Belief& theta_bar, double epsilon_hat,
                                double gamma, std::size_t true_index);

struct GlobalScanPoint {
  Belief theta;
  StrategyProfile q;
};

struct GlobalScanFailure {
  Belief theta;
  std::string message;
};

struct GlobalScanReport {
  std::size_t resolution = 0;
  std::size_t grid_points = 0;
  // Incomplete-information fixed-point candidates: q in EQ(theta) with
  // every supported parameter payoff-equivalent to s* at q.
  std::vector<GlobalScanPoint> violations;
  std::vector<GlobalScanFailure> failures;
  bool no_violation_found() const { return violations.empty(); }
};

GlobalScanReport global_stability_scan(const GameSpec& spec,
                                       std::size_t resolution,
                                       double kl_tol = kDefaultKlTolerance,
                                       const EquilibriumOptions& eq = {});

enum class LearningVerdict { kComplete, kUndetermined };

const char* to_string(LearningVerdict verdict);

struct CompleteLearningReport {
  LearningVerdict verdict = LearningVerdict::kUndetermined;
  std::vector<std::size_t> support;
  bool local_consistency = false;
  bool concavity = false;
  // "declared" for builtins, "sampled" for generic games, "" when skipped.
  std::string concavity_method;
  std::size_t probes = 0;
  std::optional<StrategyProfile> witness;
  std::optional<std::size_t> witness_param;
  double witness_kl = 0.0;
};

CompleteLearningReport complete_learning_check(
    const GameSpec& spec, const Belief& theta_bar, const StrategyProfile& q_bar,
    double xi = 0.1, std::size_t n_probe = 1000, std::uint64_t seed = 0,
    double kl_tol = kDefaultKlTolerance);

struct StaticConvergenceReport {
  UpdateRule rule = UpdateRule::kSequentialBr;
  bool listed = false;
  std::size_t starts = 0;
  std::size_t converged = 0;
  std::size_t max_steps = 0;
  double tol = 0.0;
  // Final max_i best-response utility gap and steps used, per start.
  std::vector<double> residuals;
  std::vector<std::size_t> steps;
  bool pass() const { return converged == starts; }
};

// Iterates the learner with theta frozen from `starts` uniform random
// profiles until the best-response utility gap of every player is below
// tol, or max_steps stages pass.
StaticConvergenceReport static_convergence_check(
    const GameSpec& spec, const LearnerConfig& learner, const Belief& theta,
    std::size_t starts = 20, std::size_t max_steps = 10000, double tol = 1e-6,
    std::uint64_t seed = 0);

// Euclidean distance from q to the nearest member of eq_set.
double distance_to_set(const StrategyProfile& q,
                       const std::vector<StrategyProfile>& eq_set);

}  // namespace bgl

#endif  // BGL_ANALYSIS_HPP_

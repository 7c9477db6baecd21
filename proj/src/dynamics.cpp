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

#include "bgl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bgl {

const char* to_string(UpdateSchedule::Kind kind) {
  switch (kind) {
    case UpdateSchedule::Kind::kEveryStage: return "every_stage";
    case UpdateSchedule::Kind::kEveryN: return "every_n";
    case UpdateSchedule::Kind::kTwoTimescale: return "two_timescale";
  }
  return "unknown";
}

std::optional<UpdateSchedule::Kind> parse_schedule_kind(std::string_view name) {
  for (auto k : {UpdateSchedule::Kind::kEveryStage, UpdateSchedule::Kind::kEveryN,
                 UpdateSchedule::Kind::kTwoTimescale}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

void UpdateSchedule::validate() const {
  if (kind == Kind::kEveryN && every < 1) {
    throw ConfigError("schedule.n", "must be >= 1");
  }
  if (kind == Kind::kTwoTimescale && !(growth > 1.0 && std::isfinite(growth))) {
    throw ConfigError("schedule.growth", "must be > 1");
  }
}

std::size_t UpdateSchedule::gap(std::size_t t) const {
  switch (kind) {
    case Kind::kEveryStage: return 1;
    case Kind::kEveryN: return every;
    case Kind::kTwoTimescale: {
      const double g = std::ceil(std::pow(growth, static_cast<double>(t)));
      if (g >= static_cast<double>(std::numeric_limits<std::size_t>::max() / 2)) {
        return std::numeric_limits<std::size_t>::max() / 2;
      }
      return static_cast<std::size_t>(g);
    }
  }
  return 1;
}

std::vector<std::size_t> UpdateSchedule::stages_up_to(
    std::size_t horizon) const {
  std::vector<std::size_t> out;
  std::size_t k = 1;
  for (std::size_t t = 1; k <= horizon; ++t) {
    out.push_back(k);
    k += gap(t);
  }
  return out;
}

Trajectory run(const GameSpec& spec, const LearnerConfig& learner,
               const UpdateSchedule& schedule, const Belief& init_theta,
               const StrategyProfile& init_q, const RunOptions& options) {
  learner.validate();
  schedule.validate();
  spec.check_belief(init_theta);
  spec.check_feasible(init_q);
  if (options.horizon < 1) throw ConfigError("horizon", "must be >= 1");
  if (!options.allow_zero_support) {
    for (std::size_t s = 0; s < init_theta.size(); ++s) {
      if (!(init_theta.probability(s) > 0.0)) {
        throw ConfigError("init_theta",
                          "initial belief must give every parameter positive "
                          "probability");
      }
    }
  }

  Trajectory traj;
  traj.records.reserve(options.horizon);
  if (!is_listed_pairing(spec.payoff().kind(), learner.rule)) {
    traj.summary.warnings.push_back(
        std::string("no static-belief convergence guarantee is listed for ") +
        to_string(learner.rule) + " on " + to_string(spec.payoff().kind()));
  }

  RandomStream rng = RandomStream(options.seed).split(options.stream);
  Belief theta = init_theta;
  StrategyProfile q = init_q;
  ScoreState scores{init_q};
  ObservationBatch pending;

  // The next schedule stage after k = 1.
  std::size_t t = 1;
  std::size_t next_update = 1 + schedule.gap(t);

  try {
    for (std::size_t k = 1; k <= options.horizon; ++k) {
      Observation obs = sample_observation(spec, q, rng);
      pending.push_back({q, obs});
      traj.records.push_back({k, theta, q, std::move(obs)});

      if (k + 1 == next_update) {
        theta = bayes_update(spec, theta, pending);
        pending.clear();
        ++traj.summary.belief_updates;
        ++t;
        next_update += schedule.gap(t);
      }
      q = learner_step(spec, learner, theta, q, k, scores);
    }
  } catch (const Error& e) {
    traj.summary.error_kind = e.kind();
    traj.summary.error = e.what();
  }

  traj.summary.final_belief = theta;
  traj.summary.final_strategy = q;
  if (traj.ok() && options.convergence_window < traj.records.size()) {
    if (auto point = detect_convergence(traj, options.convergence_window,
                                        options.convergence_tol)) {
      traj.summary.convergence_stage = point->stage;
    }
  }
  return traj;
}

std::optional<ConvergedPoint> detect_convergence(const Trajectory& traj,
                                                 std::size_t window,
                                                 double tol) {
  const std::size_t horizon = traj.records.size();
  if (window == 0 || window > horizon) return std::nullopt;
  const std::size_t first = horizon - window;
  const std::size_t n_params = traj.records.front().theta.size();
  const std::size_t n_players = traj.records.front().q.size();

  std::vector<double> lo(n_params + n_players,
                         std::numeric_limits<double>::infinity());
  std::vector<double> hi(n_params + n_players,
                         -std::numeric_limits<double>::infinity());
  std::vector<double> mean(n_params + n_players, 0.0);
  for (std::size_t r = first; r < horizon; ++r) {
    const StageRecord& rec = traj.records[r];
    for (std::size_t c = 0; c < n_params + n_players; ++c) {
      const double v =
          c < n_params ? rec.theta.probability(c) : rec.q[c - n_params];
      lo[c] = std::min(lo[c], v);
      hi[c] = std::max(hi[c], v);
      mean[c] += v;
    }
  }
  for (std::size_t c = 0; c < lo.size(); ++c) {
    if (hi[c] - lo[c] >= tol) return std::nullopt;
    mean[c] /= static_cast<double>(window);
  }
  ConvergedPoint point;
  std::vector<double> p(mean.begin(), mean.begin() + n_params);
  double sum = 0.0;
  for (double v : p) sum += v;
  for (double& v : p) v /= sum;
  point.theta = Belief::from_probabilities(p, 1e-6);
  point.q.assign(mean.begin() + n_params, mean.end());
  point.stage = first;
  return point;
}

}  // namespace bgl

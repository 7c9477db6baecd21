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

#ifndef BGL_DYNAMICS_HPP_
#define BGL_DYNAMICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bgl/belief.hpp"
#include "bgl/error.hpp"
#include "bgl/game.hpp"
#include "bgl/learners.hpp"

namespace bgl {

// Stages k_1 = 1 < k_2 < ... at which the belief is updated with the
// observations gathered since the previous update.
struct UpdateSchedule {
  enum class Kind { kEveryStage, kEveryN, kTwoTimescale };
  Kind kind = Kind::kEveryStage;
  std::size_t every = 1;  // kEveryN
  double growth = 1.5;    // kTwoTimescale: k_{t+1} - k_t = ceil(growth^t)

  void validate() const;
  // k_{t+1} - k_t for t >= 1.
  std::size_t gap(std::size_t t) const;
  std::vector<std::size_t> stages_up_to(std::size_t horizon) const;

  friend bool operator==(const UpdateSchedule&, const UpdateSchedule&) =
      default;
};

const char* to_string(UpdateSchedule::Kind kind);
std::optional<UpdateSchedule::Kind> parse_schedule_kind(std::string_view name);

struct StageRecord {
  std::size_t k = 0;
  Belief theta = Belief::uniform(1);
  StrategyProfile q;
  Observation obs;
};

struct TrajectorySummary {
  Belief final_belief = Belief::uniform(1);
  StrategyProfile final_strategy;
  std::optional<std::size_t> convergence_stage;
  std::size_t belief_updates = 0;
  std::vector<std::string> warnings;
  // Set when the run aborted; records hold the stages completed before.
  std::optional<ErrorKind> error_kind;
  std::string error;
};

struct Trajectory {
  std::vector<StageRecord> records;
  TrajectorySummary summary;

  bool ok() const { return !summary.error_kind.has_value(); }
};

struct RunOptions {
  std::size_t horizon = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // child stream of `seed` used by this run
  // Experiments may start from beliefs that exclude parameters.
  bool allow_zero_support = false;
  std::size_t convergence_window = 500;
  double convergence_tol = 1e-6;
};

// Runs stages k = 1..horizon: observe at q^k, update the belief at schedule
// stages, then apply the learner with theta^{k+1} and q^k. Solver and
// numeric failures stop the run and are reported in the summary.
Trajectory run(const GameSpec& spec, const LearnerConfig& learner,
               const UpdateSchedule& schedule, const Belief& init_theta,
               const StrategyProfile& init_q, const RunOptions& options);

struct ConvergedPoint {
  Belief theta = Belief::uniform(1);
  StrategyProfile q;
  std::size_t stage = 0;
};

// Tail average over the last `window` records when every coordinate of
// theta and q varies by less than `tol` there.
std::optional<ConvergedPoint> detect_convergence(const Trajectory& traj,
                                                 std::size_t window,
                                                 double tol);

}  // namespace bgl

#endif  // BGL_DYNAMICS_HPP_

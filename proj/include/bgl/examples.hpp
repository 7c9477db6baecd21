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

#ifndef BGL_EXAMPLES_HPP_
#define BGL_EXAMPLES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "bgl/belief.hpp"
#include "bgl/game.hpp"

namespace bgl {

inline constexpr double kDefaultSigma = 1.0;

struct KnownFixedPoint {
  Belief theta;
  StrategyProfile q;
  bool complete_info = false;
};

enum class GlobalVerdict { kGloballyStable, kNoneGloballyStable };

const char* to_string(GlobalVerdict verdict);

struct ExampleFixture {
  GameSpec spec;
  // For the zero-sum game the fixed points form a family; the listed
  // members are its endpoints and midpoint.
  std::vector<KnownFixedPoint> fixed_points;
  GlobalVerdict verdict;
};

// Two-firm Cournot market, price alpha - beta * (q1 + q2) with
// (alpha, beta) in {(2, 1), (4, 3)}, quantities in [0, 3].
ExampleFixture build_cournot(double sigma = kDefaultSigma);
// v = (max(|q1 - q2|, s) - s)^2 - 2 q1^2 + (q2 - 2)^2 / 2, s in {1, 3, 5},
// player 1 receives v and player 2 receives -v, strategies in [0, 6].
ExampleFixture build_zero_sum(double sigma = kDefaultSigma);
// u_i = q_i (s - 2 q_i + q_j) with s in {0, 1, 2}, investments in [0, 1].
ExampleFixture build_investment(double sigma = kDefaultSigma);

std::vector<std::string> builtin_game_names();
// Throws ConfigError naming `field` for an unknown game.
ExampleFixture build_fixture(std::string_view name,
                             double sigma = kDefaultSigma,
                             const std::string& field = "game.builtin");
GameSpec builtin_game(std::string_view name, double sigma = kDefaultSigma);

// Closed-form equilibrium strategy of the zero-sum game for a belief.
StrategyProfile zero_sum_equilibrium(const Belief& theta);
// Closed-form equilibrium of the investment game: both play E[s] / 3.
StrategyProfile investment_equilibrium(const Belief& theta);

// Potential of the Cournot game under belief theta:
// mean_alpha * sum(q) - mean_beta * (sum q_i^2 + sum_{i<j} q_i q_j).
double cournot_potential(const Belief& theta, const StrategyProfile& q);

}  // namespace bgl

#endif  // BGL_EXAMPLES_HPP_

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


#include "bgl/examples.hpp"

#include <cstddef>

#include "bgl/error.hpp"

namespace bgl {

const char* to_string(GlobalVerdict verdict) {
  switch (verdict) {
    case GlobalVerdict::kGloballyStable: return "globally_stable";
    case GlobalVerdict::kNoneGloballyStable: return "none_globally_stable";
  }
  return "unknown";
}

namespace {

Belief probs(std::initializer_list<double> p) {
  return Belief::from_probabilities(std::vector<double>(p));
}

}  // namespace

ExampleFixture build_cournot(double sigma) {
  GameSpec spec("cournot-ex1", {{0.0, 3.0}, {0.0, 3.0}},
                ParameterSet({"s1", "s2"}, 0),
                make_cournot_payoff(2, {2.0, 4.0}, {1.0, 3.0}), sigma);
  return {std::move(spec),
          {{probs({1.0, 0.0}), {2.0 / 3.0, 2.0 / 3.0}, true},
           {probs({0.5, 0.5}), {0.5, 0.5}, false}},
          GlobalVerdict::kNoneGloballyStable};
}

ExampleFixture build_zero_sum(double sigma) {
  GameSpec spec("zero-sum-ex2", {{0.0, 6.0}, {0.0, 6.0}},
                ParameterSet({"1", "3", "5"}, 1),
                make_zero_sum_payoff({1.0, 3.0, 5.0}), sigma);
  return {std::move(spec),
          {{probs({0.0, 1.0, 0.0}), {0.0, 2.0}, true},
           {probs({0.0, 0.0, 1.0}), {0.0, 2.0}, false},
           {probs({0.0, 0.5, 0.5}), {0.0, 2.0}, false}},
          GlobalVerdict::kNoneGloballyStable};
}

ExampleFixture build_investment(double sigma) {
  GameSpec spec("investment-ex3", {{0.0, 1.0}, {0.0, 1.0}},
                ParameterSet({"0", "1", "2"}, 1),
                make_investment_payoff({0.0, 1.0, 2.0}), sigma);
  return {std::move(spec),
          {{probs({0.0, 1.0, 0.0}), {1.0 / 3.0, 1.0 / 3.0}, true}},
          GlobalVerdict::kGloballyStable};
}

std::vector<std::string> builtin_game_names() {
  return {"cournot-ex1", "zero-sum-ex2", "investment-ex3"};
}

ExampleFixture build_fixture(std::string_view name, double sigma,
                             const std::string& field) {
  if (name == "cournot-ex1") return build_cournot(sigma);
  if (name == "zero-sum-ex2") return build_zero_sum(sigma);
  if (name == "investment-ex3") return build_investment(sigma);
  throw ConfigError(field, "unknown builtin game '" + std::string(name) +
                               "' (expected cournot-ex1, zero-sum-ex2 or "
                               "investment-ex3)");
}

GameSpec builtin_game(std::string_view name, double sigma) {
  return build_fixture(name, sigma).spec;
}

StrategyProfile zero_sum_equilibrium(const Belief& theta) {
  if (theta.size() != 3) fail(ErrorKind::kConfig, "zero-sum belief needs 3 entries");
  const double t1 = theta.probability(0);
  return {0.0, (2.0 + 2.0 * t1) / (2.0 * t1 + 1.0)};
}

StrategyProfile investment_equilibrium(const Belief& theta) {
  if (theta.size() != 3) {
    fail(ErrorKind::kConfig, "investment belief needs 3 entries");
  }
  const double mean = theta.probability(1) + 2.0 * theta.probability(2);
  return {mean / 3.0, mean / 3.0};
}

double cournot_potential(const Belief& theta, const StrategyProfile& q) {
  if (theta.size() != 2) fail(ErrorKind::kConfig, "cournot belief needs 2 entries");
  const double alpha = 2.0 * theta.probability(0) + 4.0 * theta.probability(1);
  const double beta = 1.0 * theta.probability(0) + 3.0 * theta.probability(1);
  double sum = 0.0;
  double squares = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    sum += q[i];
    squares += q[i] * q[i];
    for (std::size_t j = i + 1; j < q.size(); ++j) cross += q[i] * q[j];
  }
  return alpha * sum - beta * (squares + cross);
}

}  // namespace bgl

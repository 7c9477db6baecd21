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


#include <cmath>
#include <vector>

#include "bgl/belief.hpp"
#include "bgl/examples.hpp"
#include "bgl/learners.hpp"
#include "bgl/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bgl;

namespace {

void check_profile(const StrategyProfile& got, const StrategyProfile& want, double tol = 1e-9) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(tol));
}

Belief random_belief(std::size_t n, RandomStream& rng) {
  std::vector<double> p(n);
  double sum = 0;
  for (double& v : p) sum += (v = rng.uniform() + 1e-3);
  for (double& v : p) v /= sum;
  return Belief::from_probabilities(p);
}

StrategyProfile random_profile(const GameSpec& spec, RandomStream& rng) {
  StrategyProfile q;
  for (const Interval& set : spec.strategy_sets()) q.push_back(rng.uniform(set.lo, set.hi));
  return q;
}

}  // namespace

TEST_SUITE("learners") {

TEST_CASE("best responses at the worked examples") {
  const GameSpec cournot = builtin_game("cournot-ex1");
  CHECK(best_response(cournot, Belief::point_mass(2, 0), 0, std::vector<double>{0, 2.0 / 3}) ==
        doctest::Approx(2.0 / 3));
  CHECK(best_response(cournot, Belief::uniform(2), 0, std::vector<double>{0, 0.5}) ==
        doctest::Approx(0.5));
  const GameSpec inv = builtin_game("investment-ex3");
  CHECK(best_response(inv, Belief::point_mass(3, 1), 0, std::vector<double>{0, 1.0 / 3}) ==
        doctest::Approx(1.0 / 3));
}

TEST_CASE("update steps at the worked examples") {
  const GameSpec cournot = builtin_game("cournot-ex1");
  const Belief star = Belief::point_mass(2, 0);
  const std::vector<double> zero{0, 0};
  check_profile(step_simultaneous_br(cournot, star, zero), {1, 1});
  check_profile(step_sequential_br(cournot, star, zero, 1), {1, 0});
  check_profile(step_sequential_br(cournot, star, std::vector<double>{1, 0}, 2), {1, 0.5});
  check_profile(step_inertial_br(cournot, star, zero, 0.5), {0.5, 0.5});

  auto [q1, x1] = step_no_regret(cournot, star, zero, ScoreState{{0, 0}}, 0.1);
  check_profile(q1, {0.2, 0.2});
  check_profile(x1.x, {0.2, 0.2});
  const std::vector<double> eq{2.0 / 3, 2.0 / 3};
  auto [q2, x2] = step_no_regret(cournot, star, eq, ScoreState{eq}, 0.1);
  check_profile(q2, eq, 1e-14);
  check_profile(x2.x, eq, 1e-14);

  const GameSpec inv = builtin_game("investment-ex3");
  check_profile(step_simultaneous_br(inv, Belief::point_mass(3, 1), zero), {0.25, 0.25});
}

TEST_CASE("inertial step limits") {
  RandomStream rng(1);
  for (const std::string& name : builtin_game_names()) {
    const GameSpec spec = builtin_game(name);
    for (int trial = 0; trial < 50; ++trial) {
      const Belief theta = random_belief(spec.num_params(), rng);
      const StrategyProfile q = random_profile(spec, rng);
      CHECK(step_inertial_br(spec, theta, q, 1.0) == step_simultaneous_br(spec, theta, q));
      CHECK(step_inertial_br(spec, theta, q, 0.0) == q);
    }
  }
}

TEST_CASE("equilibria are fixed by every rule") {
  for (const std::string& name : builtin_game_names()) {
    const ExampleFixture fx = build_fixture(name);
    for (const KnownFixedPoint& fp : fx.fixed_points) {
      check_profile(step_simultaneous_br(fx.spec, fp.theta, fp.q), fp.q, 1e-9);
      for (std::size_t k = 1; k <= 4; ++k) {
        check_profile(step_sequential_br(fx.spec, fp.theta, fp.q, k), fp.q, 1e-9);
      }
    }
  }
  // Interior equilibrium with x = q for the gradient rule.
  const GameSpec cournot = builtin_game("cournot-ex1");
  const std::vector<double> q{0.5, 0.5};
  auto [next, scores] = step_no_regret(cournot, Belief::uniform(2), q, ScoreState{q}, 0.3);
  check_profile(next, q, 1e-14);
}

TEST_CASE("every step stays feasible") {
  RandomStream rng(2);
  for (const std::string& name : builtin_game_names()) {
    const GameSpec spec = builtin_game(name);
    for (int trial = 0; trial < 200; ++trial) {
      const Belief theta = random_belief(spec.num_params(), rng);
      const StrategyProfile q = random_profile(spec, rng);
      const double alpha = rng.uniform();
      CHECK(spec.is_feasible(step_simultaneous_br(spec, theta, q)));
      CHECK(spec.is_feasible(step_sequential_br(spec, theta, q, trial + 1)));
      CHECK(spec.is_feasible(step_inertial_br(spec, theta, q, alpha)));
      const ScoreState x{random_profile(spec, rng)};
      CHECK(spec.is_feasible(step_no_regret(spec, theta, q, x, alpha).first));
    }
  }
}

TEST_CASE("best response beats 1000 uniform candidates") {
  RandomStream rng(3);
  for (const std::string& name : builtin_game_names()) {
    const GameSpec spec = builtin_game(name);
    for (int trial = 0; trial < 20; ++trial) {
      const Belief theta = random_belief(spec.num_params(), rng);
      StrategyProfile q = random_profile(spec, rng);
      for (std::size_t i = 0; i < spec.num_players(); ++i) {
        StrategyProfile at = q;
        at[i] = best_response(spec, theta, i, q);
        const double best = expected_utility(spec, theta, i, at);
        const Interval& set = spec.strategy_set(i);
        for (int c = 0; c < 1000; ++c) {
          StrategyProfile alt = q;
          alt[i] = rng.uniform(set.lo, set.hi);
          REQUIRE(expected_utility(spec, theta, i, alt) <= best + 1e-10);
        }
      }
    }
  }
}

TEST_CASE("generic quartic best response beats a dense grid") {
  // u_1 = q1 - 4 q1^3 + 2 q1^4 + q1 q2, u_2 = -(q2 - 0.3)^2 expanded.
  std::vector<std::vector<Polynomial>> payoffs{{
      Polynomial({{1.0, {1, 0}}, {-4.0, {3, 0}}, {2.0, {4, 0}}, {1.0, {1, 1}}}),
      Polynomial({{-1.0, {0, 2}}, {0.6, {0, 1}}, {-0.09, {0, 0}}}),
  }};
  GameSpec spec("quartic", {{-1, 2}, {0, 1}}, ParameterSet({"a"}, 0),
                make_polynomial_payoff(2, payoffs, {false}), 1.0);
  const Belief theta = Belief::uniform(1);
  for (double q2 : {0.0, 0.25, 0.8}) {
    const double br = best_response(spec, theta, 0, std::vector<double>{0, q2});
    auto u = [&](double x) { return x - 4 * x * x * x + 2 * x * x * x * x + x * q2; };
    for (int c = 0; c <= 30000; ++c) {
      const double x = -1.0 + 3.0 * c / 30000;
      REQUIRE(u(x) <= u(br) + 1e-10);
    }
  }
  CHECK(best_response(spec, theta, 1, std::vector<double>{0, 0}) == doctest::Approx(0.3));
}

TEST_CASE("equilibrium solver examples") {
  const GameSpec inv = builtin_game("investment-ex3");
  auto r = solve_equilibrium(inv, Belief::point_mass(3, 1));
  REQUIRE(r.equilibria.size() == 1);
  check_profile(r.equilibria[0], {1.0 / 3, 1.0 / 3}, 1e-8);
  r = solve_equilibrium(inv, Belief::uniform(3));
  REQUIRE(r.equilibria.size() == 1);
  check_profile(r.equilibria[0], {1.0 / 3, 1.0 / 3}, 1e-8);

  const GameSpec cournot = builtin_game("cournot-ex1");
  r = solve_equilibrium(cournot, Belief::uniform(2));
  REQUIRE(r.equilibria.size() == 1);
  check_profile(r.equilibria[0], {0.5, 0.5}, 1e-8);

  const GameSpec zs = builtin_game("zero-sum-ex2");
  r = solve_equilibrium(zs, Belief::from_probabilities(std::vector<double>{0.5, 0.5, 0}));
  REQUIRE(r.equilibria.size() == 1);
  check_profile(r.equilibria[0], {0, 1.5}, 1e-8);
  r = solve_equilibrium(zs, Belief::point_mass(3, 0));
  REQUIRE(r.equilibria.size() == 1);
  check_profile(r.equilibria[0], {0, 4.0 / 3}, 1e-8);
  r = solve_equilibrium(zs, Belief::point_mass(3, 1));
  REQUIRE(r.equilibria.size() == 1);
  check_profile(r.equilibria[0], {0, 2}, 1e-8);
}

TEST_CASE("closed-form equilibrium maps agree with the solver") {
  RandomStream rng(4);
  const GameSpec zs = builtin_game("zero-sum-ex2");
  const GameSpec inv = builtin_game("investment-ex3");
  for (int trial = 0; trial < 30; ++trial) {
    const Belief t = random_belief(3, rng);
    const auto a = solve_equilibrium(zs, t);
    REQUIRE(a.equilibria.size() == 1);
    const double p1 = t.probability(0);
    check_profile(a.equilibria[0], {0, (2 + 2 * p1) / (2 * p1 + 1)}, 1e-7);
    const auto b = solve_equilibrium(inv, t);
    REQUIRE(b.equilibria.size() == 1);
    const double es = t.probability(1) + 2 * t.probability(2);
    check_profile(b.equilibria[0], {es / 3, es / 3}, 1e-7);
  }
}

TEST_CASE("step schedules") {
  StepSchedule c{StepSchedule::Kind::kConstant, 0.2};
  StepSchedule h{StepSchedule::Kind::kHarmonic, 0.5};
  StepSchedule r{StepSchedule::Kind::kInverseSqrt, 1.0};
  CHECK(c.at(7) == 0.2);
  CHECK(h.at(4) == doctest::Approx(0.125));
  CHECK(r.at(9) == doctest::Approx(1.0 / 3));
}

TEST_CASE("listed pairings") {
  for (UpdateRule rule : {UpdateRule::kSimultaneousBr, UpdateRule::kSequentialBr,
                          UpdateRule::kInertialBr, UpdateRule::kNoRegret}) {
    CHECK(is_listed_pairing(PayoffKind::kCournot, rule));
    CHECK(is_listed_pairing(PayoffKind::kInvestment, rule));
  }
  CHECK(is_listed_pairing(PayoffKind::kZeroSum, UpdateRule::kInertialBr));
  CHECK(is_listed_pairing(PayoffKind::kZeroSum, UpdateRule::kNoRegret));
  CHECK_FALSE(is_listed_pairing(PayoffKind::kZeroSum, UpdateRule::kSimultaneousBr));
  CHECK_FALSE(is_listed_pairing(PayoffKind::kZeroSum, UpdateRule::kSequentialBr));
}

TEST_CASE("Cournot potential peaks at the equilibrium along each coordinate") {
  for (const KnownFixedPoint& fp : build_cournot().fixed_points) {
    const double peak = cournot_potential(fp.theta, fp.q);
    for (std::size_t i = 0; i < 2; ++i) {
      for (int c = 0; c <= 300; ++c) {
        StrategyProfile q = fp.q;
        q[i] = 3.0 * c / 300;
        CHECK(cournot_potential(fp.theta, q) <= peak + 1e-12);
      }
    }
  }
}

}  // TEST_SUITE

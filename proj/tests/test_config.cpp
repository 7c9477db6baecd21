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


#include <cstdio>
#include <sstream>
#include <string>

#include "bgl/config.hpp"
#include "bgl/examples.hpp"
#include "bgl/report.hpp"
#include "doctest.h"

using namespace bgl;

namespace {

const char* kBase = R"(game:
  builtin: investment-ex3
init_theta: [0.2, 0.3, 0.5]
init_q: [0.1, 0.9]
horizon: 100
seed: 3
)";

ConfigError config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("config was accepted");
  return ConfigError("", "");
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("fixture configs round-trip") {
  for (const std::string& name : builtin_game_names()) {
    const RunConfig c = fixture_config(name);
    CHECK(parse_config(dump_config(c)) == c);
  }
}

TEST_CASE("a full config round-trips") {
  RunConfig c = parse_config(R"(game:
  generic:
    name: quad
    players:
      - {lo: -1.5, hi: 2.0}
      - {lo: 0.0, hi: 1.0}
    params:
      - id: a
        concave: true
        payoffs:
          - [{coef: 0.1, powers: [1, 0]}, {coef: -1.0, powers: [2, 0]}]
          - [{coef: 0.3, powers: [0, 1]}, {coef: -1.0, powers: [0, 2]}]
      - id: b
        payoffs:
          - [{coef: 0.7, powers: [1, 1]}]
          - [{coef: -0.5, powers: [0, 2]}]
    true_param: b
  sigma: 0.3
learner:
  rule: no_regret
  step: {kind: inverse_sqrt, scale: 0.25}
schedule: {kind: two_timescale, growth: 1.7}
init_theta: random
init_q: [0.2, 0.4]
horizon: 50
seed: 12345678901
allow_zero_support: true
output: {trajectory: out.csv, summary: out.json, record_every: 5}
tolerances: {kl: 1e-7, br: 1e-6, convergence_window: 20, convergence_tol: 1e-5}
)");
  CHECK(parse_config(dump_config(c)) == c);
  CHECK(c.learner.step.kind == StepSchedule::Kind::kInverseSqrt);
  CHECK(c.schedule.growth == 1.7);
  CHECK(c.seed == 12345678901ull);
  const GameSpec spec = c.game.build();
  CHECK(spec.true_index() == 1);
}

TEST_CASE("save and load through a file") {
  const RunConfig c = fixture_config("cournot-ex1", 0.7);
  const std::string path = "bgl_test_roundtrip.yaml";
  save_config(c, path);
  CHECK(load_config(path) == c);
  std::remove(path.c_str());
}

TEST_CASE("rejections name the field and line") {
  std::string text = kBase;
  text.replace(text.find("[0.2, 0.3, 0.5]"), 15, "[0.3, 0.3, 0.3]");
  ConfigError e = config_error(text);
  CHECK(e.field() == "init_theta");
  CHECK(e.line() == 3);

  e = config_error(std::string(kBase) + "colour: red\n");
  CHECK(e.field() == "colour");
  CHECK(e.line() == 7);

  text = kBase;
  text.erase(text.find("horizon"), 13);
  e = config_error(text);
  CHECK(e.field() == "horizon");

  text = kBase;
  text.erase(text.find("seed"), 8);
  CHECK(config_error(text).field() == "seed");

  e = config_error(R"(game:
  generic:
    players:
      - {lo: 1.0, hi: 1.0}
      - {lo: 0.0, hi: 1.0}
    params:
      - id: a
        payoffs:
          - [{coef: 1.0, powers: [1, 0]}]
          - [{coef: 1.0, powers: [0, 1]}]
    true_param: a
init_theta: [1.0]
init_q: [1.0, 0.5]
horizon: 10
seed: 0
)");
  CHECK(e.field().find("players[0]") != std::string::npos);

  text = kBase;
  text.replace(text.find("[0.1, 0.9]"), 10, "[0.1, 1.9]");
  CHECK(config_error(text).field() == "init_q");

  text = kBase;
  text.replace(text.find("investment-ex3"), 14, "chess");
  CHECK(config_error(text).field() == "game.builtin");

  CHECK_THROWS_AS(parse_config("game: [unclosed"), ConfigError);
}

TEST_CASE("degree above four is rejected") {
  ConfigError e = config_error(R"(game:
  generic:
    players:
      - {lo: 0.0, hi: 1.0}
      - {lo: 0.0, hi: 1.0}
    params:
      - id: a
        payoffs:
          - [{coef: 1.0, powers: [5, 0]}]
          - [{coef: 1.0, powers: [0, 1]}]
    true_param: a
init_theta: [1.0]
init_q: [0.5, 0.5]
horizon: 10
seed: 0
)");
  CHECK(e.field() == "game.generic.params[0].payoffs[0][0].powers");
  CHECK(e.line() == 9);
}

TEST_CASE("random starts come from the seed") {
  RunConfig c = parse_config(R"(game: {builtin: zero-sum-ex2}
init_theta: random
init_q: random
horizon: 10
seed: 8
)");
  const GameSpec spec = c.game.build();
  const InitialState a = initial_state(c, spec);
  const InitialState b = initial_state(c, spec);
  CHECK(a.theta == b.theta);
  CHECK(a.q == b.q);
  CHECK(spec.is_feasible(a.q));
  for (double p : a.theta.probabilities()) CHECK(p > 0);
  c.seed = 9;
  CHECK_FALSE(initial_state(c, spec).q == a.q);
}

TEST_CASE("trajectory files re-parse to the recorded values") {
  for (const std::string& name : builtin_game_names()) {
    RunConfig c = fixture_config(name);
    c.horizon = 300;
    const GameSpec spec = c.game.build();
    const Trajectory traj = run_config(c, spec);
    std::stringstream buf;
    write_trajectory(buf, spec, traj);
    const TrajectoryTable table = read_trajectory(buf);
    REQUIRE(table.rows.size() == traj.records.size());
    const std::size_t ns = spec.num_params(), np = spec.num_players();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const StageRecord& rec = traj.records[r];
      const auto& row = table.rows[r];
      REQUIRE(row[0] == double(rec.k));
      for (std::size_t s = 0; s < ns; ++s) REQUIRE(row[1 + s] == rec.theta.probability(s));
      for (std::size_t i = 0; i < np; ++i) REQUIRE(row[1 + ns + i] == rec.q[i]);
      std::size_t col = 1 + ns + np;
      for (double v : rec.obs.context) REQUIRE(row[col++] == v);
      for (double v : rec.obs.statistic) REQUIRE(row[col++] == v);
    }
  }
}

TEST_CASE("downsampling keeps every n-th stage and the last") {
  RunConfig c = fixture_config("investment-ex3");
  c.horizon = 95;
  const GameSpec spec = c.game.build();
  const Trajectory traj = run_config(c, spec);
  std::stringstream buf;
  write_trajectory(buf, spec, traj, 10);
  const TrajectoryTable table = read_trajectory(buf);
  REQUIRE(table.rows.size() == 11);
  CHECK(table.rows.front()[0] == 1);
  CHECK(table.rows[1][0] == 11);
  CHECK(table.rows.back()[0] == 95);
}

TEST_CASE("manifests") {
  const StabilityManifest m = parse_manifest(R"(game: {builtin: cournot-ex1}
theta_bar: [1.0, 0.0]
grid:
  gamma: [0.8, 0.9]
  eps1: [thresholds, 0.01]
seed: 2
)");
  CHECK(m.gamma == std::vector<double>{0.8, 0.9});
  REQUIRE(m.eps1.size() == 2);
  CHECK_FALSE(m.eps1[0].has_value());
  CHECK(*m.eps1[1] == 0.01);
  CHECK(m.eq_set.empty());
  CHECK_THROWS_AS(parse_manifest("game: {builtin: cournot-ex1}\ntheta_bar: [0.5, 0.4]\nseed: 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_manifest("game: {builtin: cournot-ex1}\ntheta_bar: [1, 0]\n"), ConfigError);
}

TEST_CASE("reports serialize") {
  const GameSpec spec = builtin_game("cournot-ex1");
  const auto fp = verify_fixed_point(spec, Belief::uniform(2), {0.5, 0.5});
  const auto j = report_json(spec, fp);
  CHECK(j["is_fixed_point"] == true);
  CHECK(report_text(spec, fp).find("fixed point") != std::string::npos);
  const auto t = report_json(stability_thresholds(Belief::point_mass(2, 0), 0.1, 0.9, 0));
  CHECK(t["rho2"].get<double>() == doctest::Approx(0.025));
}

}  // TEST_SUITE

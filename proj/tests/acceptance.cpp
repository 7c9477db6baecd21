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


// Runs the ten acceptance experiments and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bgl/analysis.hpp"
#include "bgl/config.hpp"
#include "bgl/examples.hpp"
#include "bgl/parallel.hpp"
#include "bgl/rng.hpp"

#ifndef BGL_CONFIG_DIR
#define BGL_CONFIG_DIR "tools/configs"
#endif

using namespace bgl;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string config_path(const char* name) { return std::string(BGL_CONFIG_DIR) + "/" + name; }

double norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Belief probs(std::vector<double> p) { return Belief::from_probabilities(p); }

Belief dirichlet(std::size_t n, RandomStream& rng) {
  std::vector<double> p(n);
  double sum = 0;
  for (double& v : p) sum += (v = -std::log(1.0 - rng.uniform()));
  for (double& v : p) v /= sum;
  return probs(p);
}

// 1. Investment, sequential BR, 100 random starts.
Outcome investment_convergence() {
  const auto t0 = Clock::now();
  RunConfig cfg = load_config(config_path("investment-sequential.yaml"));
  const GameSpec spec = cfg.game.build();
  const std::size_t n = 100;
  std::vector<char> ok(n, 0);
  std::atomic<int> full_support{0};
  parallel_for(n, [&](std::size_t r) {
    RunConfig c = cfg;
    c.seed = r;
    const InitialState init = initial_state(c, spec);
    if (init.theta.support().size() == spec.num_params()) ++full_support;
    const Trajectory traj = run_config(c, spec);
    ok[r] = traj.ok() &&
            norm_diff(traj.summary.final_belief.probabilities(), {0, 1, 0}) < 1e-3 &&
            norm_diff(traj.summary.final_strategy, {1.0 / 3, 1.0 / 3}) < 1e-3;
  });
  const int hits = static_cast<int>(std::count(ok.begin(), ok.end(), 1));
  const double dt = seconds_since(t0);
  return {hits == 100 && full_support == 100 && dt < 60.0,
          fmt("%d/100 within 1e-3 of ((0,1,0),(1/3,1/3)), %.2f s", hits, dt)};
}

// 2. Cournot decay rate of s2 on seeds that reach the complete information point.
Outcome cournot_rate() {
  RunConfig cfg = load_config(config_path("cournot-rate.yaml"));
  const GameSpec spec = cfg.game.build();
  // KL between N(2/3, 1) and N(0, 1): prices at q* = (2/3, 2/3).
  const double p1 = 2.0 - 1.0 * (4.0 / 3), p2 = 4.0 - 3.0 * (4.0 / 3);
  const double predicted = -(p1 - p2) * (p1 - p2) / 2.0;
  int used = 0, within = 0;
  double worst = 0, slowest = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t0 = Clock::now();
    RunConfig c = cfg;
    c.seed = seed;
    const Trajectory traj = run_config(c, spec);
    if (!traj.ok()) return {false, "run failed: " + traj.summary.error};
    const bool at_star =
        norm_diff(traj.summary.final_belief.probabilities(), {1, 0}) < 1e-3 &&
        norm_diff(traj.summary.final_strategy, {2.0 / 3, 2.0 / 3}) < 1e-3;
    if (!at_star) continue;
    const RateEstimate est = estimate_rate(spec, traj, 1);
    slowest = std::max(slowest, seconds_since(t0));
    ++used;
    const double rel = std::abs(est.slope / predicted - 1.0);
    worst = std::max(worst, rel);
    if (rel <= 0.10) ++within;
  }
  return {used >= 5 && within == used && slowest < 60.0,
          fmt("%d/%d converging seeds within 10%% of %.6f (worst %.1f%%), %.2f s per seed max",
              within, used, predicted, 100 * worst, slowest)};
}

// 3. The five listed fixed points.
Outcome fixed_points() {
  struct Case {
    const char* game;
    std::vector<double> theta, q;
  };
  const std::vector<Case> cases{
      {"cournot-ex1", {1, 0}, {2.0 / 3, 2.0 / 3}},
      {"cournot-ex1", {0.5, 0.5}, {0.5, 0.5}},
      {"investment-ex3", {0, 1, 0}, {1.0 / 3, 1.0 / 3}},
      {"zero-sum-ex2", {0, 1, 0}, {0, 2}},
      {"zero-sum-ex2", {0, 0, 1}, {0, 2}},
  };
  int ok = 0;
  for (const Case& c : cases) {
    const auto r = verify_fixed_point(builtin_game(c.game), probs(c.theta), c.q, 1e-9, 1e-8);
    ok += r.is_fixed_point;
  }
  return {ok == 5, fmt("%d/5 verified (br_tol 1e-8, kl_tol 1e-9)", ok)};
}

// 4. Global scans.
Outcome global_scans() {
  const auto t0 = Clock::now();
  const auto inv = global_stability_scan(builtin_game("investment-ex3"), 100);
  const auto cournot = global_stability_scan(builtin_game("cournot-ex1"), 100);
  const auto zs = global_stability_scan(builtin_game("zero-sum-ex2"), 100);

  const bool inv_ok = inv.no_violation_found() && inv.failures.empty();
  const bool cournot_ok =
      cournot.violations.size() == 1 && cournot.failures.empty() &&
      norm_diff(cournot.violations[0].theta.probabilities(), {0.5, 0.5}) < 1e-6 &&
      norm_diff(cournot.violations[0].q, {0.5, 0.5}) < 1e-6;
  // Every grid belief with theta(1) = 0 other than theta* itself, each at q = (0, 2).
  bool zs_ok = zs.failures.empty() && zs.violations.size() == 100;
  std::vector<char> seen(101, 0);
  for (const GlobalScanPoint& v : zs.violations) {
    const auto p = v.theta.probabilities();
    zs_ok = zs_ok && p[0] == 0.0 && norm_diff(v.q, {0, 2}) < 1e-6;
    const long j = std::lround(p[1] * 100);
    if (j >= 0 && j <= 100) seen[j] = 1;
  }
  for (int j = 0; j < 100; ++j) zs_ok = zs_ok && seen[j];
  return {inv_ok && cournot_ok && zs_ok,
          fmt("investment %zu violations; cournot %zu (at (0.5,0.5)/(0.5,0.5): %s); "
              "zero-sum %zu on theta(1)=0 with q=(0,2): %s; %.1f s",
              inv.violations.size(), cournot.violations.size(), cournot_ok ? "yes" : "no",
              zs.violations.size(), zs_ok ? "yes" : "no", seconds_since(t0))};
}

// 5. Martingale identity.
Outcome martingale() {
  const GameSpec cournot = builtin_game("cournot-ex1");
  const bool base = martingale_check(cournot, Belief::uniform(2), {2.0 / 3, 2.0 / 3}, 100000, 0).pass;
  std::string per_game;
  bool all = base;
  std::uint64_t seed = 1;
  for (const std::string& name : builtin_game_names()) {
    const GameSpec spec = builtin_game(name);
    RandomStream rng(0x4d47, seed++);
    int pass = 0, pairs = 0;
    while (pairs < 20) {
      const Belief theta = dirichlet(spec.num_params(), rng);
      StrategyProfile q;
      for (const Interval& set : spec.strategy_sets()) q.push_back(rng.uniform(set.lo, set.hi));
      // Pairs whose one-step likelihood ratio has bounded variance, e^{2 KL} - 1.
      double kl = 0;
      for (std::size_t s = 0; s < spec.num_params(); ++s) {
        kl = std::max(kl, kl_divergence(spec, spec.true_index(), s, q));
      }
      if (kl > 1.0) continue;
      ++pairs;
      pass += martingale_check(spec, theta, q, 100000, 1000 + pairs).pass;
    }
    all = all && pass >= 19;
    per_game += fmt(" %s %d/20;", name.c_str(), pass);
  }
  return {all, fmt("uniform/(2/3,2/3): %s;%s need >= 19/20", base ? "pass" : "fail", per_game.c_str())};
}

// 6. Local stability at the complete information point, escape at the incomplete one.
Outcome local_stability() {
  auto run_manifest = [](const char* file) {
    const StabilityManifest m = load_manifest(config_path(file));
    const GameSpec spec = m.game.build();
    const Belief bar = probs(m.theta_bar);
    StabilityParams p;
    p.gamma = m.gamma.at(0);
    p.eps_bar = m.eps_bar.at(0);
    p.eps_x = m.eps_x.at(0);
    p.eps1 = m.eps1.at(0) ? *m.eps1[0]
                          : stability_thresholds(bar, p.eps_bar, p.gamma, spec.true_index()).epsilon1();
    p.delta1 = m.delta1.at(0);
    p.n_runs = m.n_runs;
    p.horizon = m.horizon;
    p.seed = m.seed;
    if (m.escape_theta) {
      p.escape_theta = probs(*m.escape_theta);
      p.escape_q = *m.escape_q;
      p.escape_radius = m.escape_radius;
    }
    return local_stability_experiment(spec, m.learner, m.schedule, bar, m.eq_set, p);
  };
  const StabilityReport near = run_manifest("cournot-local.yaml");
  const StabilityReport esc = run_manifest("cournot-escape.yaml");
  const Thresholds t = stability_thresholds(probs({1, 0}), 0.1, 0.9, 0);
  const bool eps_ok = near.params.eps1 == std::min(t.rho1, t.rho3) && near.params.delta1 == 0.05 &&
                      near.n_runs == 200;
  const double escape = esc.escape_fraction.value_or(0.0);
  return {eps_ok && near.final_neighborhood_fraction > 0.9 && esc.params.delta1 == 0.1 && escape > 0.0,
          fmt("eps1 = %.6g, final fraction %.3f > 0.9; incomplete point delta1 0.1: escape fraction %.3f",
              near.params.eps1, near.final_neighborhood_fraction, escape)};
}

// 7. Complete learning verdicts.
Outcome complete_learning() {
  const auto zs = complete_learning_check(builtin_game("zero-sum-ex2"), probs({0, 0.5, 0.5}), {0, 2});
  const auto c = complete_learning_check(builtin_game("cournot-ex1"), probs({0.5, 0.5}), {0.5, 0.5});
  const bool witness = c.witness && c.witness_kl > 1e-9;
  return {zs.verdict == LearningVerdict::kComplete && c.verdict == LearningVerdict::kUndetermined && witness,
          fmt("zero-sum %s; cournot %s, witness KL %.4g", to_string(zs.verdict), to_string(c.verdict),
              c.witness_kl)};
}

// 8. Two-timescale schedule reaches the same point as every-stage updates.
Outcome two_timescale() {
  RunConfig base = load_config(config_path("investment-sequential.yaml"));
  const GameSpec spec = base.game.build();
  RunConfig slow = base;
  slow.schedule = UpdateSchedule{UpdateSchedule::Kind::kTwoTimescale, 1, 1.5};
  const std::size_t n = 20;
  std::vector<char> ok(n, 0);
  std::vector<std::size_t> updates(n, 0);
  parallel_for(n, [&](std::size_t r) {
    RunConfig a = base, b = slow;
    a.seed = b.seed = r;
    const Trajectory ta = run_config(a, spec);
    const Trajectory tb = run_config(b, spec);
    updates[r] = tb.summary.belief_updates;
    ok[r] = ta.ok() && tb.ok() &&
            norm_diff(ta.summary.final_belief.probabilities(), tb.summary.final_belief.probabilities()) < 1e-3 &&
            norm_diff(ta.summary.final_strategy, tb.summary.final_strategy) < 1e-3 &&
            norm_diff(tb.summary.final_strategy, {1.0 / 3, 1.0 / 3}) < 1e-3;
  });
  const int hits = static_cast<int>(std::count(ok.begin(), ok.end(), 1));
  return {hits == 20, fmt("%d/20 seeds agree within 1e-3 (%zu belief updates under g = 1.5)", hits,
                          updates[0])};
}

// 9. Static-belief convergence for the listed (game, rule) pairs.
Outcome static_pairs() {
  int pairs = 0, ok = 0;
  std::string failed;
  for (const std::string& name : builtin_game_names()) {
    const GameSpec spec = builtin_game(name);
    for (UpdateRule rule : {UpdateRule::kSimultaneousBr, UpdateRule::kSequentialBr,
                            UpdateRule::kInertialBr, UpdateRule::kNoRegret}) {
      if (!is_listed_pairing(spec.payoff().kind(), rule)) continue;
      for (const Belief& theta : {Belief::uniform(spec.num_params()),
                                  Belief::point_mass(spec.num_params(), spec.true_index())}) {
        LearnerConfig learner;
        learner.rule = rule;
        ++pairs;
        const auto r = static_convergence_check(spec, learner, theta, 20, 10000, 1e-6, 0);
        if (r.pass()) {
          ++ok;
        } else {
          failed += " " + name + "/" + to_string(rule);
        }
      }
    }
  }
  return {pairs == 20 && ok == pairs,
          fmt("%d/%d (pair, belief) checks converged from 20 starts%s", ok, pairs, failed.c_str())};
}

// 10. Property suites.
Outcome properties() {
  const auto t0 = Clock::now();
  std::vector<std::string> bad;

  {  // Simplex preservation over 10^6 updates.
    const GameSpec spec = builtin_game("zero-sum-ex2");
    RandomStream rng(10);
    Belief theta = Belief::uniform(3);
    double worst = 0;
    bool neg = false;
    for (int k = 0; k < 1000000; ++k) {
      if (k % 5000 == 0) theta = dirichlet(3, rng);
      const StrategyProfile q{rng.uniform(0, 6), rng.uniform(0, 6)};
      theta = bayes_update(spec, theta, q, sample_observation(spec, q, rng));
      double sum = 0;
      for (std::size_t s = 0; s < 3; ++s) {
        const double p = theta.probability(s);
        neg |= !(p >= 0.0);
        sum += p;
      }
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    if (neg || worst > 1e-12) bad.push_back(fmt("simplex (drift %.3g)", worst));
  }
  {  // Gradient against central differences.
    RandomStream rng(11);
    int miss = 0;
    for (const std::string& name : builtin_game_names()) {
      const GameSpec spec = builtin_game(name);
      for (int k = 0; k < 100; ++k) {
        const Belief theta = dirichlet(spec.num_params(), rng);
        StrategyProfile q;
        for (const Interval& set : spec.strategy_sets()) {
          q.push_back(rng.uniform(set.lo + 0.01 * set.width(), set.hi - 0.01 * set.width()));
        }
        if (name == "zero-sum-ex2") {
          bool kink = false;
          for (double s : {1.0, 3.0, 5.0}) kink |= std::abs(std::abs(q[0] - q[1]) - s) < 1e-4;
          if (kink) continue;
        }
        for (std::size_t i = 0; i < spec.num_players(); ++i) {
          const double h = 1e-6;
          StrategyProfile up = q, down = q;
          up[i] += h;
          down[i] -= h;
          const double fd = (expected_utility(spec, theta, i, up) - expected_utility(spec, theta, i, down)) / (2 * h);
          const double g = utility_gradient_own(spec, theta, i, q);
          miss += std::abs(g - fd) > 1e-6 * std::max(1.0, std::abs(fd));
        }
      }
    }
    if (miss) bad.push_back(fmt("gradient (%d mismatches)", miss));
  }
  {  // Batch associativity.
    RandomStream rng(12);
    double worst = 0;
    for (const std::string& name : builtin_game_names()) {
      const GameSpec spec = builtin_game(name);
      for (int trial = 0; trial < 200; ++trial) {
        ObservationBatch a, b;
        for (int k = 0; k < 1 + trial % 9; ++k) {
          StrategyProfile q;
          for (const Interval& set : spec.strategy_sets()) q.push_back(rng.uniform(set.lo, set.hi));
          (k % 2 ? a : b).push_back({q, sample_observation(spec, q, rng)});
        }
        if (a.empty() || b.empty()) continue;
        ObservationBatch ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        const Belief prior = dirichlet(spec.num_params(), rng);
        const Belief two = bayes_update(spec, bayes_update(spec, prior, a), b);
        const Belief one = bayes_update(spec, prior, ab);
        for (std::size_t s = 0; s < spec.num_params(); ++s) {
          worst = std::max(worst, std::abs(two.log_probability(s) - one.log_probability(s)));
        }
      }
    }
    if (worst > 1e-10) bad.push_back(fmt("associativity (%.3g)", worst));
  }
  {  // Config round trips, including random perturbations of the fixtures.
    RandomStream rng(13);
    int miss = 0;
    for (const std::string& name : builtin_game_names()) {
      for (int k = 0; k < 50; ++k) {
        RunConfig c = fixture_config(name, rng.uniform(0.1, 3.0));
        c.seed = rng();
        c.horizon = 1 + rng() % 100000;
        c.learner.step.scale = rng.uniform();
        c.tolerances.kl = rng.uniform(1e-12, 1e-6);
        const GameSpec spec = c.game.build();
        const Belief t = dirichlet(spec.num_params(), rng);
        c.init_theta.values = t.probabilities();
        miss += !(parse_config(dump_config(c)) == c);
      }
    }
    if (miss) bad.push_back(fmt("config round-trip (%d mismatches)", miss));
  }
  const double dt = seconds_since(t0);
  std::string detail = bad.empty() ? "simplex 1e6 updates, gradient, associativity, config round-trip all hold"
                                   : "failed:";
  for (const std::string& b : bad) detail += " " + b;
  detail += fmt(", %.1f s", dt);
  return {bad.empty() && dt < 300.0, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"investment convergence", investment_convergence},
      {"cournot decay rate", cournot_rate},
      {"listed fixed points", fixed_points},
      {"global stability verdicts", global_scans},
      {"belief-ratio martingale", martingale},
      {"local stability and escape", local_stability},
      {"complete learning verdicts", complete_learning},
      {"two-timescale agreement", two_timescale},
      {"static-belief convergence", static_pairs},
      {"property suites", properties},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::printf("%s %2d %-28s %s\n", out.pass ? "PASS" : "FAIL", index++, name, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}

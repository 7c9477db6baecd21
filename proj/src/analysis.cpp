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


#include "bgl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <sstream>

#include "bgl/error.hpp"
#include "bgl/parallel.hpp"
#include "bgl/rng.hpp"

namespace bgl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxRejections = 10000;

bool contains(const std::vector<std::size_t>& set, std::size_t s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

double euclidean(const StrategyProfile& a, const StrategyProfile& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

// Uniform direction in R^d scaled to a uniform radius in the d-ball.
std::vector<double> ball_offset(RandomStream& rng, std::size_t d,
                                double radius) {
  std::vector<double> v(d);
  double norm = 0.0;
  while (norm == 0.0) {
    norm = 0.0;
    for (double& x : v) {
      x = rng.normal();
      norm += x * x;
    }
    norm = std::sqrt(norm);
  }
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  for (double& x : v) x *= r / norm;
  return v;
}

// Uniform point of the radius-ball around `center` inside Q.
StrategyProfile sample_strategy_ball(const GameSpec& spec,
                                     const StrategyProfile& center,
                                     double radius, RandomStream& rng,
                                     const char* field) {
  if (radius == 0.0) return center;
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::vector<double> q = ball_offset(rng, center.size(), radius);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += center[i];
    if (spec.is_feasible(q)) return q;
  }
  throw ConfigError(field, "strategy neighborhood has no feasible points");
}

// Uniform point of the radius-ball around theta_bar within the simplex:
// the offset lives in the sum-zero tangent space.
Belief sample_belief_ball(const Belief& theta_bar, double radius,
                          RandomStream& rng) {
  const std::size_t n = theta_bar.size();
  if (radius == 0.0 || n == 1) return theta_bar;
  const std::vector<double> center = theta_bar.probabilities();
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    std::vector<double> g(n);
    double mean = 0.0;
    for (double& x : g) {
      x = rng.normal();
      mean += x;
    }
    mean /= static_cast<double>(n);
    double norm = 0.0;
    for (double& x : g) {
      x -= mean;
      norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double r =
        radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n - 1));
    std::vector<double> p(n);
    bool inside = true;
    double sum = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      p[s] = center[s] + r * g[s] / norm;
      if (p[s] < 0.0) inside = false;
      sum += p[s];
    }
    if (!inside) continue;
    for (double& x : p) x /= sum;
    return Belief::from_probabilities(p);
  }
  throw ConfigError("eps1", "belief neighborhood has no points in the simplex");
}

}  // namespace

double distance_to_set(const StrategyProfile& q,
                       const std::vector<StrategyProfile>& eq_set) {
  double best = std::numeric_limits<double>::infinity();
  for (const StrategyProfile& e : eq_set) best = std::min(best, euclidean(q, e));
  return best;
}

FixedPointReport verify_fixed_point(const GameSpec& spec, const Belief& theta,
                                    const StrategyProfile& q, double kl_tol,
                                    double br_tol,
                                    const SolverOptions& solver) {
  if (!(kl_tol > 0.0) || !(br_tol > 0.0)) {
    fail(ErrorKind::kDomain, "tolerances must be > 0");
  }
  spec.check_belief(theta);
  spec.check_feasible(q);
  FixedPointReport r;
  r.kl_tol = kl_tol;
  r.br_tol = br_tol;
  r.support = theta.support();
  r.payoff_equivalent = payoff_equivalent_set(spec, q, kl_tol);
  r.support_subset_ok = std::all_of(
      r.support.begin(), r.support.end(),
      [&](std::size_t s) { return contains(r.payoff_equivalent, s); });
  r.is_equilibrium = true;
  for (std::size_t i = 0; i < spec.num_players(); ++i) {
    const double gap = best_response_gap(spec, theta, i, q, solver);
    r.br_residual.push_back(gap);
    if (!(gap <= br_tol)) r.is_equilibrium = false;
  }
  r.is_complete_info =
      r.support.size() == 1 && r.support.front() == spec.true_index();
  r.is_fixed_point = r.support_subset_ok && r.is_equilibrium;
  return r;
}

RateEstimate estimate_rate(const GameSpec& spec, const Trajectory& traj,
                           std::size_t s, double tail_fraction,
                           double kl_tol) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    fail(ErrorKind::kDomain, "tail fraction must lie in (0, 1]");
  }
  if (s >= spec.num_params()) fail(ErrorKind::kConfig, "parameter out of range");
  if (traj.records.size() < 2) {
    fail(ErrorKind::kUndefinedRate, "trajectory has fewer than two records");
  }
  const StrategyProfile& q_final = traj.summary.final_strategy.empty()
                                       ? traj.records.back().q
                                       : traj.summary.final_strategy;
  RateEstimate est;
  est.param = s;
  const double kl = kl_divergence(spec, spec.true_index(), s, q_final);
  if (kl <= kl_tol) {
    fail(ErrorKind::kUndefinedRate,
         "parameter '" + spec.params().id(s) +
             "' is payoff-equivalent to the true parameter at the final "
             "strategy; its belief need not decay");
  }
  est.predicted_slope = -kl;

  const std::size_t n = traj.records.size();
  const std::size_t count = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(tail_fraction * static_cast<double>(n))));
  const std::size_t first = n - std::min(n, count);
  double sx = 0.0, sy = 0.0;
  for (std::size_t r = first; r < n; ++r) {
    const double y = traj.records[r].theta.log_probability(s);
    if (y == kNegInf) {
      fail(ErrorKind::kUndefinedRate, "belief weight is exactly zero in the tail");
    }
    const double x = static_cast<double>(traj.records[r].k);
    sx += x;
    sy += y;
  }
  const double m = static_cast<double>(n - first);
  // Centered form keeps precision for large stage counts.
  const double mx = sx / m;
  const double my = sy / m;
  double cxx = 0.0, cxy = 0.0;
  for (std::size_t r = first; r < n; ++r) {
    const double dx = static_cast<double>(traj.records[r].k) - mx;
    cxx += dx * dx;
    cxy += dx * (traj.records[r].theta.log_probability(s) - my);
  }
  est.slope = cxy / cxx;
  est.intercept = my - est.slope * mx;
  est.first_stage = traj.records[first].k;
  est.points = n - first;
  return est;
}

MartingaleReport martingale_check(const GameSpec& spec, const Belief& theta,
                                  const StrategyProfile& q,
                                  std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 10000) fail(ErrorKind::kDomain, "n_samples must be >= 10000");
  spec.check_belief(theta);
  spec.check_feasible(q);
  const std::size_t star = spec.true_index();
  const std::size_t n_params = spec.num_params();
  // Throws kInvariant when theta(s*) = 0.
  (void)belief_ratio(theta, star, star);

  MartingaleReport report;
  report.samples = n_samples;
  std::vector<double> mean(n_params, 0.0), m2(n_params, 0.0);
  RandomStream rng(seed, 0x6d61);
  for (std::size_t t = 0; t < n_samples; ++t) {
    const Observation obs = sample_observation(spec, q, rng);
    const double ll_star = log_likelihood(spec, star, obs, q);
    for (std::size_t s = 0; s < n_params; ++s) {
      if (s == star) continue;
      // Ratio after one Bayes step; the normalizer cancels.
      double next = 0.0;
      if (theta.log_probability(s) != kNegInf) {
        const double ll = log_likelihood(spec, s, obs, q);
        next = std::exp(theta.log_probability(s) - theta.log_probability(star) +
                        (ll - ll_star));
      }
      const double delta = next - mean[s];
      mean[s] += delta / static_cast<double>(t + 1);
      m2[s] += delta * (next - mean[s]);
    }
  }
  report.pass = true;
  for (std::size_t s = 0; s < n_params; ++s) {
    if (s == star) continue;
    MartingaleEntry e;
    e.param = s;
    e.current_ratio = belief_ratio(theta, s, star);
    e.mean_next_ratio = mean[s];
    const double var = m2[s] / static_cast<double>(n_samples - 1);
    e.standard_error = std::sqrt(var / static_cast<double>(n_samples));
    e.pass = std::abs(e.mean_next_ratio - e.current_ratio) <=
             report.se_band * e.standard_error;
    report.pass = report.pass && e.pass;
    report.entries.push_back(e);
  }
  return report;
}

StabilityReport local_stability_experiment(
    const GameSpec& spec, const LearnerConfig& learner,
    const UpdateSchedule& schedule, const Belief& theta_bar,
    const std::vector<StrategyProfile>& eq_set, const StabilityParams& p) {
  if (!(p.gamma > 0.0 && p.gamma < 1.0)) {
    throw ConfigError("gamma", "must lie in (0, 1)");
  }
  if (!(p.eps_bar > 0.0)) throw ConfigError("eps_bar", "must be > 0");
  if (!(p.eps_x > 0.0)) throw ConfigError("eps_x", "must be > 0");
  if (!(p.eps1 >= 0.0)) throw ConfigError("eps1", "must be >= 0");
  if (!(p.delta1 >= 0.0)) throw ConfigError("delta1", "must be >= 0");
  if (p.n_runs < 1) throw ConfigError("n_runs", "must be >= 1");
  if (eq_set.empty()) throw ConfigError("eq_set", "must not be empty");
  if (p.escape_theta.has_value() != p.escape_q.has_value()) {
    throw ConfigError("escape", "needs both a belief and a strategy");
  }
  spec.check_belief(theta_bar);
  for (const StrategyProfile& e : eq_set) spec.check_feasible(e);
  learner.validate();
  schedule.validate();

  struct Outcome {
    bool failed = false;
    bool final_in = false;
    bool contained = false;
    bool escaped = false;
  };
  std::vector<Outcome> outcomes(p.n_runs);

  // Draw every initial state up front so results do not depend on threads.
  std::vector<Belief> theta0;
  std::vector<StrategyProfile> q0;
  RandomStream sampler(p.seed, 0x5354);
  for (std::size_t r = 0; r < p.n_runs; ++r) {
    RandomStream rng = sampler.split(r);
    theta0.push_back(sample_belief_ball(theta_bar, p.eps1, rng));
    const std::size_t pick = std::min(
        eq_set.size() - 1,
        static_cast<std::size_t>(rng.uniform() * static_cast<double>(eq_set.size())));
    q0.push_back(sample_strategy_ball(spec, eq_set[pick], p.delta1, rng, "delta1"));
  }

  auto inside = [&](const Belief& theta, const StrategyProfile& q) {
    return distance(theta, theta_bar) < p.eps_bar &&
           distance_to_set(q, eq_set) < p.eps_x;
  };

  parallel_for(p.n_runs, [&](std::size_t r) {
    RunOptions opts;
    opts.horizon = p.horizon;
    opts.seed = p.seed;
    opts.stream = r;
    opts.allow_zero_support = true;
    opts.convergence_window = 0;
    const Trajectory traj = run(spec, learner, schedule, theta0[r], q0[r], opts);
    Outcome& out = outcomes[r];
    if (!traj.ok()) {
      out.failed = true;
      return;
    }
    const Belief& theta_f = traj.summary.final_belief;
    const StrategyProfile& q_f = traj.summary.final_strategy;
    out.final_in = inside(theta_f, q_f);
    out.contained = out.final_in;
    for (const StageRecord& rec : traj.records) {
      if (!out.contained) break;
      out.contained = inside(rec.theta, rec.q);
    }
    if (p.escape_theta) {
      out.escaped = distance(theta_f, *p.escape_theta) < p.escape_radius &&
                    euclidean(q_f, *p.escape_q) < p.escape_radius;
    }
  });

  StabilityReport report;
  report.params = p;
  report.n_runs = p.n_runs;
  std::size_t final_in = 0, contained = 0, escaped = 0;
  for (const Outcome& o : outcomes) {
    report.failed_runs += o.failed ? 1 : 0;
    final_in += o.final_in ? 1 : 0;
    contained += o.contained ? 1 : 0;
    escaped += o.escaped ? 1 : 0;
  }
  const double n = static_cast<double>(p.n_runs);
  report.final_neighborhood_fraction = static_cast<double>(final_in) / n;
  report.containment_fraction = static_cast<double>(contained) / n;
  if (p.escape_theta) report.escape_fraction = static_cast<double>(escaped) / n;
  report.exceeds_gamma = report.final_neighborhood_fraction > p.gamma;
  return report;
}

Thresholds stability_thresholds(const Belief& theta_bar, double epsilon_hat,
                                double gamma, std::size_t true_index) {
  if (!(gamma > 0.0 && gamma < 1.0)) fail(ErrorKind::kDomain, "gamma must lie in (0, 1)");
  if (!(epsilon_hat > 0.0) || !std::isfinite(epsilon_hat)) {
    fail(ErrorKind::kDomain, "epsilon_hat must be > 0");
  }
  if (true_index >= theta_bar.size()) {
    fail(ErrorKind::kDomain, "true parameter index out of range");
  }
  const std::vector<std::size_t> support = theta_bar.support();
  if (!contains(support, true_index)) {
    fail(ErrorKind::kDomain, "the true parameter has zero probability");
  }
  const double N = static_cast<double>(theta_bar.size());
  const double m = static_cast<double>(theta_bar.size() - support.size());
  const double c = 1.0 - gamma;

  Thresholds t;
  t.rho2 = epsilon_hat / ((m + 1.0) * N);
  t.rho1_bound = std::numeric_limits<double>::infinity();
  t.rho3_bound = std::numeric_limits<double>::infinity();
  for (std::size_t s : support) {
    const double p = theta_bar.probability(s);
    t.rho1_bound = std::min(
        t.rho1_bound,
        c * p * epsilon_hat / ((c + m) * (m + 1.0) * N + c * epsilon_hat));
    const double a = (epsilon_hat - m * N * t.rho2 * p) / (N - m * N * t.rho2);
    const double b = epsilon_hat / N - t.rho2 * m * (p + epsilon_hat / N);
    t.rho3_bound = std::min({t.rho3_bound, a, b, p});
  }
  if (!(t.rho1_bound > 0.0) || !(t.rho3_bound > 0.0)) {
    fail(ErrorKind::kDomain,
         "threshold bounds are not positive for this belief and epsilon_hat");
  }
  t.rho1 = 0.99 * t.rho1_bound;
  t.rho3 = 0.99 * t.rho3_bound;
  const double star = theta_bar.probability(true_index);
  t.ratio_interval_nonempty = t.rho1 < t.rho2 * star / (1.0 + t.rho2);
  return t;
}

GlobalScanReport global_stability_scan(const GameSpec& spec,
                                       std::size_t resolution, double kl_tol,
                                       const EquilibriumOptions& eq) {
  if (resolution < 10) fail(ErrorKind::kDomain, "resolution must be >= 10");
  const std::size_t n = spec.num_params();
  const std::size_t star = spec.true_index();

  // Every composition of `resolution` into n parts, in lexicographic order.
  std::vector<std::vector<std::size_t>> grid;
  std::vector<std::size_t> c(n, 0);
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t pos,
                                                           std::size_t left) {
    if (pos + 1 == n) {
      c[pos] = left;
      if (c[star] != resolution) grid.push_back(c);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      c[pos] = v;
      fill(pos + 1, left - v);
    }
  };
  fill(0, resolution);

  struct Cell {
    std::vector<GlobalScanPoint> violations;
    std::optional<std::string> failure;
  };
  std::vector<Cell> cells(grid.size());
  parallel_for(grid.size(), [&](std::size_t g) {
    std::vector<double> p(n);
    for (std::size_t s = 0; s < n; ++s) {
      p[s] = static_cast<double>(grid[g][s]) / static_cast<double>(resolution);
    }
    const Belief theta = Belief::from_probabilities(p);
    try {
      const EquilibriumResult res = solve_equilibrium(spec, theta, eq);
      if (res.equilibria.empty()) {
        cells[g].failure = "no equilibrium found";
        return;
      }
      const std::vector<std::size_t> support = theta.support();
      for (const StrategyProfile& q : res.equilibria) {
        const std::vector<std::size_t> equiv = payoff_equivalent_set(spec, q, kl_tol);
        const bool distinguishes = std::any_of(
            support.begin(), support.end(),
            [&](std::size_t s) { return !contains(equiv, s); });
        if (!distinguishes) cells[g].violations.push_back({theta, q});
      }
    } catch (const Error& e) {
      cells[g].failure = e.what();
    }
  });

  GlobalScanReport report;
  report.resolution = resolution;
  report.grid_points = grid.size();
  for (std::size_t g = 0; g < cells.size(); ++g) {
    for (GlobalScanPoint& v : cells[g].violations) {
      report.violations.push_back(std::move(v));
    }
    if (cells[g].failure) {
      std::vector<double> p(n);
      for (std::size_t s = 0; s < n; ++s) {
        p[s] = static_cast<double>(grid[g][s]) / static_cast<double>(resolution);
      }
      report.failures.push_back({Belief::from_probabilities(p), *cells[g].failure});
    }
  }
  return report;
}

StaticConvergenceReport static_convergence_check(
    const GameSpec& spec, const LearnerConfig& learner, const Belief& theta,
    std::size_t starts, std::size_t max_steps, double tol, std::uint64_t seed) {
  if (starts < 1 || max_steps < 1) fail(ErrorKind::kDomain, "starts and max_steps must be >= 1");
  if (!(tol > 0.0)) fail(ErrorKind::kDomain, "tolerance must be > 0");
  learner.validate();
  spec.check_belief(theta);
  StaticConvergenceReport report;
  report.rule = learner.rule;
  report.listed = is_listed_pairing(spec.payoff().kind(), learner.rule);
  report.starts = starts;
  report.max_steps = max_steps;
  report.tol = tol;
  report.residuals.assign(starts, 0.0);
  report.steps.assign(starts, 0);

  auto residual = [&](const StrategyProfile& q) {
    double worst = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      worst = std::max(worst, best_response_gap(spec, theta, i, q, learner.solver));
    }
    return worst;
  };
  std::vector<char> converged(starts, 0);
  parallel_for(starts, [&](std::size_t r) {
    RandomStream rng(seed, 0x7374);
    rng = rng.split(r);
    StrategyProfile q(spec.num_players());
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] = rng.uniform(spec.strategy_set(i).lo, spec.strategy_set(i).hi);
    }
    ScoreState scores{q};
    double res = residual(q);
    std::size_t k = 0;
    while (!(res < tol) && k < max_steps) {
      ++k;
      q = learner_step(spec, learner, theta, q, k, scores);
      res = residual(q);
    }
    report.residuals[r] = res;
    report.steps[r] = k;
    converged[r] = res < tol;
  });
  for (char c : converged) report.converged += c ? 1 : 0;
  return report;
}

const char* to_string(LearningVerdict verdict) {
  switch (verdict) {
    case LearningVerdict::kComplete: return "COMPLETE";
    case LearningVerdict::kUndetermined: return "UNDETERMINED";
  }
  return "unknown";
}

CompleteLearningReport complete_learning_check(
    const GameSpec& spec, const Belief& theta_bar, const StrategyProfile& q_bar,
    double xi, std::size_t n_probe, std::uint64_t seed, double kl_tol) {
  if (!(xi > 0.0)) fail(ErrorKind::kDomain, "xi must be > 0");
  if (n_probe < 1) fail(ErrorKind::kDomain, "n_probe must be >= 1");
  spec.check_belief(theta_bar);
  spec.check_feasible(q_bar);

  CompleteLearningReport report;
  report.support = theta_bar.support();
  if (report.support.size() == 1) {
    report.verdict = LearningVerdict::kComplete;
    report.local_consistency = true;
    report.concavity = true;
    return report;
  }

  RandomStream rng(seed, 0x636c);
  report.local_consistency = true;
  for (std::size_t t = 0; t < n_probe; ++t) {
    const StrategyProfile q = sample_strategy_ball(spec, q_bar, xi, rng, "xi");
    ++report.probes;
    for (std::size_t s : report.support) {
      const double kl = kl_divergence(spec, spec.true_index(), s, q);
      if (kl > kl_tol) {
        report.local_consistency = false;
        if (kl > report.witness_kl) {
          report.witness = q;
          report.witness_param = s;
          report.witness_kl = kl;
        }
      }
    }
  }

  const PayoffModel& payoff = spec.payoff();
  if (payoff.kind() == PayoffKind::kPolynomial) {
    report.concavity_method = "sampled";
    report.concavity = true;
    RandomStream crng(seed, 0x6363);
    for (int t = 0; t < 1000 && report.concavity; ++t) {
      StrategyProfile q(spec.num_players());
      for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = crng.uniform(spec.strategy_set(i).lo, spec.strategy_set(i).hi);
      }
      for (std::size_t s : report.support) {
        for (std::size_t i = 0; i < q.size(); ++i) {
          if (payoff.own_curvature(s, i, q) > 1e-8) report.concavity = false;
        }
      }
    }
  } else {
    report.concavity_method = "declared";
    report.concavity = std::all_of(
        report.support.begin(), report.support.end(),
        [&](std::size_t s) { return payoff.concave_in_own(s); });
  }
  report.verdict = report.local_consistency && report.concavity
                       ? LearningVerdict::kComplete
                       : LearningVerdict::kUndetermined;
  return report;
}

}  // namespace bgl

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

#include "bgl/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bgl/error.hpp"

namespace bgl {

const char* to_string(UpdateRule rule) {
  switch (rule) {
    case UpdateRule::kSimultaneousBr: return "simultaneous_br";
    case UpdateRule::kSequentialBr: return "sequential_br";
    case UpdateRule::kInertialBr: return "inertial_br";
    case UpdateRule::kNoRegret: return "no_regret";
  }
  return "unknown";
}

std::optional<UpdateRule> parse_update_rule(std::string_view name) {
  for (UpdateRule r : {UpdateRule::kSimultaneousBr, UpdateRule::kSequentialBr,
                       UpdateRule::kInertialBr, UpdateRule::kNoRegret}) {
    if (name == to_string(r)) return r;
  }
  return std::nullopt;
}

const char* to_string(StepSchedule::Kind kind) {
  switch (kind) {
    case StepSchedule::Kind::kConstant: return "constant";
    case StepSchedule::Kind::kHarmonic: return "harmonic";
    case StepSchedule::Kind::kInverseSqrt: return "inverse_sqrt";
  }
  return "unknown";
}

std::optional<StepSchedule::Kind> parse_step_kind(std::string_view name) {
  for (auto k : {StepSchedule::Kind::kConstant, StepSchedule::Kind::kHarmonic,
                 StepSchedule::Kind::kInverseSqrt}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

double StepSchedule::at(std::size_t k) const {
  const double kk = static_cast<double>(std::max<std::size_t>(k, 1));
  switch (kind) {
    case Kind::kConstant: return scale;
    case Kind::kHarmonic: return scale / kk;
    case Kind::kInverseSqrt: return scale / std::sqrt(kk);
  }
  return scale;
}

void LearnerConfig::validate() const {
  // Every schedule is non-increasing from k = 1, so alpha^k in [0, 1] for
  // all k iff the scale is.
  if (!(step.scale >= 0.0 && step.scale <= 1.0)) {
    throw ConfigError("learner.step.scale", "step size must lie in [0, 1]");
  }
  if (regularizer != "euclidean") {
    throw ConfigError("learner.regularizer",
                      "only the euclidean regularizer is supported");
  }
  if (!(solver.inner_tol > 0.0)) {
    throw ConfigError("learner.inner_tol", "must be > 0");
  }
  if (solver.inner_max_iter < 1) {
    throw ConfigError("learner.inner_max_iter", "must be >= 1");
  }
}

bool is_listed_pairing(PayoffKind game, UpdateRule rule) {
  switch (game) {
    case PayoffKind::kCournot:
    case PayoffKind::kInvestment:
      return true;
    case PayoffKind::kZeroSum:
      return rule == UpdateRule::kInertialBr || rule == UpdateRule::kNoRegret;
    case PayoffKind::kPolynomial:
      return false;
  }
  return false;
}

double maximize_on_interval(const std::function<double(double)>& f,
                            const std::function<double(double)>& df,
                            const Interval& set, const SolverOptions& opts) {
  constexpr int kCells = 256;
  std::vector<double> candidates{set.lo, set.hi};
  double x_prev = set.lo;
  double d_prev = df(x_prev);
  if (d_prev == 0.0) candidates.push_back(x_prev);
  for (int j = 1; j <= kCells; ++j) {
    const double x = j == kCells ? set.hi : set.lo + set.width() * j / kCells;
    const double d = df(x);
    if (!std::isfinite(d)) {
      fail(ErrorKind::kNumeric, "non-finite derivative in best response");
    }
    if (d == 0.0) candidates.push_back(x);
    if (d_prev > 0.0 && d < 0.0) {
      double a = x_prev, b = x;
      int iter = 0;
      while (b - a > opts.inner_tol) {
        if (++iter > opts.inner_max_iter) {
          std::ostringstream os;
          os.precision(17);
          os << "best-response bisection did not reach tolerance "
             << opts.inner_tol << " within " << opts.inner_max_iter
             << " iterations (bracket [" << a << ", " << b << "])";
          fail(ErrorKind::kSolver, os.str());
        }
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double dm = df(mid);
        if (dm > 0.0) {
          a = mid;
        } else if (dm < 0.0) {
          b = mid;
        } else {
          a = b = mid;
        }
      }
      candidates.push_back(0.5 * (a + b));
    }
    x_prev = x;
    d_prev = d;
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<double> values(candidates.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    values[c] = f(candidates[c]);
    best = std::max(best, values[c]);
  }
  const double tie = 1e-14 * std::max(1.0, std::abs(best));
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (values[c] >= best - tie) return candidates[c];
  }
  return candidates.front();
}

namespace {

// Maximizer of c0 + c1 x + c2 x^2 on the interval, smallest on ties.
double maximize_quadratic(double c1, double c2, const Interval& set) {
  if (c2 < 0.0) return set.clamp(-c1 / (2.0 * c2));
  if (c2 == 0.0) return c1 > 0.0 ? set.hi : set.lo;
  const double at_lo = c1 * set.lo + c2 * set.lo * set.lo;
  const double at_hi = c1 * set.hi + c2 * set.hi * set.hi;
  return at_hi > at_lo ? set.hi : set.lo;
}

}  // namespace

double best_response(const GameSpec& spec, const Belief& theta, std::size_t i,
                     std::span<const double> q, const SolverOptions& opts) {
  spec.check_belief(theta);
  if (q.size() != spec.num_players() || i >= spec.num_players()) {
    fail(ErrorKind::kConfig, "strategy profile does not match the game");
  }
  StrategyProfile work(q.begin(), q.end());
  const Interval& set = spec.strategy_set(i);
  work[i] = set.lo;
  spec.check_feasible(work);
  const PayoffModel& model = spec.payoff();
  const std::vector<std::size_t> support = theta.support();

  // Polynomial in the own coordinate: combine the restrictions.
  UnivariatePolynomial combined;
  bool polynomial = true;
  for (std::size_t s : support) {
    auto p = model.own_polynomial(s, i, work);
    if (!p) {
      polynomial = false;
      break;
    }
    *p *= theta.probability(s);
    combined += *p;
  }
  if (polynomial) {
    if (combined.degree() <= 2) {
      return maximize_quadratic(combined.coefficient(1),
                                combined.coefficient(2), set);
    }
    const UnivariatePolynomial slope = combined.derivative();
    return maximize_on_interval([&](double x) { return combined(x); },
                                [&](double x) { return slope(x); }, set, opts);
  }

  auto f = [&](double x) {
    work[i] = x;
    double v = 0.0;
    for (std::size_t s : support) {
      v += theta.probability(s) * model.utility(s, i, work);
    }
    return v;
  };
  auto df = [&](double x) {
    work[i] = x;
    double v = 0.0;
    for (std::size_t s : support) {
      v += theta.probability(s) * model.own_derivative(s, i, work);
    }
    return v;
  };
  return maximize_on_interval(f, df, set, opts);
}

double best_response_gap(const GameSpec& spec, const Belief& theta,
                         std::size_t i, std::span<const double> q,
                         const SolverOptions& opts) {
  StrategyProfile deviated(q.begin(), q.end());
  deviated[i] = best_response(spec, theta, i, q, opts);
  return expected_utility(spec, theta, i, deviated) -
         expected_utility(spec, theta, i, q);
}

double best_response_displacement(const GameSpec& spec, const Belief& theta,
                                  std::span<const double> q,
                                  const SolverOptions& opts) {
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.num_players(); ++i) {
    worst = std::max(worst,
                     std::abs(best_response(spec, theta, i, q, opts) - q[i]));
  }
  return worst;
}

StrategyProfile step_simultaneous_br(const GameSpec& spec, const Belief& theta,
                                     std::span<const double> q,
                                     const SolverOptions& opts) {
  spec.check_feasible(q);
  StrategyProfile next(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    next[i] = best_response(spec, theta, i, q, opts);
  }
  return next;
}

StrategyProfile step_sequential_br(const GameSpec& spec, const Belief& theta,
                                   std::span<const double> q, std::size_t k,
                                   const SolverOptions& opts) {
  spec.check_feasible(q);
  if (k == 0) fail(ErrorKind::kDomain, "stages are numbered from 1");
  StrategyProfile next(q.begin(), q.end());
  const std::size_t i = (k - 1) % q.size();
  next[i] = best_response(spec, theta, i, q, opts);
  return next;
}

StrategyProfile step_inertial_br(const GameSpec& spec, const Belief& theta,
                                 std::span<const double> q, double alpha,
                                 const SolverOptions& opts) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    fail(ErrorKind::kDomain, "inertial step must lie in [0, 1]");
  }
  StrategyProfile br = step_simultaneous_br(spec, theta, q, opts);
  if (alpha == 1.0) return br;
  for (std::size_t i = 0; i < q.size(); ++i) {
    br[i] = spec.strategy_set(i).clamp((1.0 - alpha) * q[i] + alpha * br[i]);
  }
  return br;
}

std::pair<StrategyProfile, ScoreState> step_no_regret(
    const GameSpec& spec, const Belief& theta, std::span<const double> q,
    const ScoreState& scores, double alpha) {
  spec.check_feasible(q);
  if (scores.x.size() != q.size()) {
    fail(ErrorKind::kConfig, "score vector does not match the game");
  }
  ScoreState next_scores = scores;
  StrategyProfile next(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!std::isfinite(scores.x[i])) {
      fail(ErrorKind::kNumeric, "non-finite mirror-ascent score");
    }
    const double g = utility_gradient_own(spec, theta, i, q);
    if (!std::isfinite(g)) fail(ErrorKind::kNumeric, "non-finite gradient");
    next_scores.x[i] += alpha * g;
    // argmax x q - q^2/2 over the interval is the projection of x.
    next[i] = spec.strategy_set(i).clamp(next_scores.x[i]);
  }
  return {std::move(next), std::move(next_scores)};
}

StrategyProfile learner_step(const GameSpec& spec, const LearnerConfig& config,
                             const Belief& theta, std::span<const double> q,
                             std::size_t k, ScoreState& scores) {
  switch (config.rule) {
    case UpdateRule::kSimultaneousBr:
      return step_simultaneous_br(spec, theta, q, config.solver);
    case UpdateRule::kSequentialBr:
      return step_sequential_br(spec, theta, q, k, config.solver);
    case UpdateRule::kInertialBr:
      return step_inertial_br(spec, theta, q, config.step.at(k),
                              config.solver);
    case UpdateRule::kNoRegret: {
      auto [next, next_scores] =
          step_no_regret(spec, theta, q, scores, config.step.at(k));
      scores = std::move(next_scores);
      return next;
    }
  }
  fail(ErrorKind::kConfig, "unknown update rule");
}

EquilibriumResult solve_equilibrium(const GameSpec& spec, const Belief& theta,
                                    const EquilibriumOptions& opts) {
  spec.check_belief(theta);
  if (opts.max_rounds < 1) fail(ErrorKind::kDomain, "max_rounds must be >= 1");
  if (opts.starts < 1) fail(ErrorKind::kDomain, "starts must be >= 1");
  if (!(opts.tol > 0.0)) fail(ErrorKind::kDomain, "tolerance must be > 0");
  const std::size_t n = spec.num_players();

  std::vector<StrategyProfile> starts;
  if (n < 16) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      StrategyProfile corner(n);
      for (std::size_t i = 0; i < n; ++i) {
        const Interval& set = spec.strategy_set(i);
        corner[i] = (mask >> i) & 1 ? set.hi : set.lo;
      }
      starts.push_back(std::move(corner));
    }
  }
  StrategyProfile mid(n);
  for (std::size_t i = 0; i < n; ++i) {
    mid[i] = 0.5 * (spec.strategy_set(i).lo + spec.strategy_set(i).hi);
  }
  starts.push_back(std::move(mid));
  RandomStream rng(opts.seed, 0x5eed);
  while (starts.size() < static_cast<std::size_t>(opts.starts)) {
    StrategyProfile r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = rng.uniform(spec.strategy_set(i).lo, spec.strategy_set(i).hi);
    }
    starts.push_back(std::move(r));
  }
  starts.resize(static_cast<std::size_t>(opts.starts));

  EquilibriumResult result;
  result.total_starts = opts.starts;
  for (StrategyProfile q : starts) {
    bool converged = false;
    for (int round = 0; round < opts.max_rounds && !converged; ++round) {
      for (std::size_t i = 0; i < n; ++i) {
        q[i] = best_response(spec, theta, i, q, opts.solver);
      }
      converged =
          best_response_displacement(spec, theta, q, opts.solver) < opts.tol;
    }
    if (!converged) continue;
    ++result.converged_starts;
    const bool duplicate = std::any_of(
        result.equilibria.begin(), result.equilibria.end(),
        [&](const StrategyProfile& e) {
          double d2 = 0.0;
          for (std::size_t i = 0; i < n; ++i) d2 += (e[i] - q[i]) * (e[i] - q[i]);
          return std::sqrt(d2) < 10.0 * opts.tol;
        });
    if (!duplicate) result.equilibria.push_back(q);
  }
  if (result.converged_starts == 0) {
    result.warnings.push_back(
        "no start converged within max_rounds; static-belief convergence "
        "may fail for this game");
  } else if (result.converged_starts < result.total_starts) {
    std::ostringstream os;
    os << (result.total_starts - result.converged_starts) << " of "
       << result.total_starts << " starts did not converge";
    result.warnings.push_back(os.str());
  }
  return result;
}

}  // namespace bgl

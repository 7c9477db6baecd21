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

#include "bgl/game.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "bgl/belief.hpp"
#include "bgl/error.hpp"

namespace bgl {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kNumeric: return "numeric";
    case ErrorKind::kSolver: return "solver";
    case ErrorKind::kImpossibleEvidence: return "impossible-evidence";
    case ErrorKind::kInvariant: return "invariant";
    case ErrorKind::kUndefinedRate: return "undefined-rate";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

namespace {

std::string config_message(const std::string& field, const std::string& msg,
                           int line) {
  std::ostringstream os;
  os << "field '" << field << "'";
  if (line > 0) os << " (line " << line << ")";
  os << ": " << msg;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message,
                         int line)
    : Error(ErrorKind::kConfig, config_message(field, message, line)),
      field_(std::move(field)),
      message_(message),
      line_(line) {}

const char* to_string(PayoffKind kind) {
  switch (kind) {
    case PayoffKind::kCournot: return "builtin_cournot";
    case PayoffKind::kZeroSum: return "builtin_zero_sum";
    case PayoffKind::kInvestment: return "builtin_investment";
    case PayoffKind::kPolynomial: return "generic_polynomial";
  }
  return "unknown";
}

ParameterSet::ParameterSet(std::vector<std::string> ids,
                           std::size_t true_index)
    : ids_(std::move(ids)), true_index_(true_index) {
  if (ids_.empty()) throw ConfigError("params", "parameter set is empty");
  std::set<std::string> seen(ids_.begin(), ids_.end());
  if (seen.size() != ids_.size()) {
    throw ConfigError("params", "parameter labels must be unique");
  }
  if (true_index_ >= ids_.size()) {
    throw ConfigError("true_param", "true parameter index out of range");
  }
}

std::optional<std::size_t> ParameterSet::index_of(
    const std::string& label) const {
  auto it = std::find(ids_.begin(), ids_.end(), label);
  if (it == ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

namespace {

double total(std::span<const double> q) {
  double sum = 0.0;
  for (double x : q) sum += x;
  return sum;
}

// Price p = alpha - beta * sum(q); firm i earns q_i * p.
class CournotPayoff final : public PayoffModel {
 public:
  CournotPayoff(std::size_t n, std::vector<double> alpha,
                std::vector<double> beta)
      : n_(n), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alpha_.size() != beta_.size() || alpha_.empty()) {
      throw ConfigError("payoff", "cournot needs one (alpha, beta) per param");
    }
    for (double b : beta_) {
      if (!(b > 0.0)) throw ConfigError("payoff", "cournot slope must be > 0");
    }
  }

  PayoffKind kind() const override { return PayoffKind::kCournot; }
  StatisticKind statistic_kind() const override {
    return StatisticKind::kScalarSufficientStatistic;
  }
  std::size_t num_players() const override { return n_; }
  std::size_t num_params() const override { return alpha_.size(); }

  double utility(std::size_t s, std::size_t i,
                 std::span<const double> q) const override {
    return q[i] * (alpha_[s] - beta_[s] * total(q));
  }
  double own_derivative(std::size_t s, std::size_t i,
                        std::span<const double> q) const override {
    return alpha_[s] - beta_[s] * total(q) - beta_[s] * q[i];
  }
  double own_curvature(std::size_t s, std::size_t,
                       std::span<const double>) const override {
    return -2.0 * beta_[s];
  }
  std::optional<UnivariatePolynomial> own_polynomial(
      std::size_t s, std::size_t i,
      std::span<const double> q) const override {
    const double rest = total(q) - q[i];
    return UnivariatePolynomial({0.0, alpha_[s] - beta_[s] * rest, -beta_[s]});
  }
  std::vector<double> statistic_mean(std::size_t s,
                                     std::span<const double> q) const override {
    return {alpha_[s] - beta_[s] * total(q)};
  }
  std::vector<double> context(std::span<const double> q) const override {
    return {total(q)};
  }
  // With zero output every payoff q_i * p is zero and the price is hidden.
  bool informative(std::span<const double> q) const override {
    return total(q) > 0.0;
  }
  bool concave_in_own(std::size_t) const override { return true; }

 private:
  std::size_t n_;
  std::vector<double> alpha_, beta_;
};

// v^s(q) = (max(|q1 - q2|, s) - s)^2 - 2 q1^2 + (q2 - 2)^2 / 2,
// y_1 = -y_2 = v.
class ZeroSumPayoff final : public PayoffModel {
 public:
  explicit ZeroSumPayoff(std::vector<double> thresholds)
      : thresholds_(std::move(thresholds)) {
    if (thresholds_.empty()) {
      throw ConfigError("payoff", "zero-sum needs at least one threshold");
    }
    for (double s : thresholds_) {
      if (!(s >= 0.0)) throw ConfigError("payoff", "threshold must be >= 0");
    }
  }

  PayoffKind kind() const override { return PayoffKind::kZeroSum; }
  StatisticKind statistic_kind() const override {
    return StatisticKind::kScalarSufficientStatistic;
  }
  std::size_t num_players() const override { return 2; }
  std::size_t num_params() const override { return thresholds_.size(); }

  double utility(std::size_t s, std::size_t i,
                 std::span<const double> q) const override {
    const double v = value(s, q);
    return i == 0 ? v : -v;
  }
  double own_derivative(std::size_t s, std::size_t i,
                        std::span<const double> q) const override {
    const double d = q[0] - q[1];
    const double h = hinge(s, d);
    const double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    if (i == 0) return 2.0 * h * sign - 4.0 * q[0];
    return -(-2.0 * h * sign + (q[1] - 2.0));
  }
  // Right second derivative along the player's own coordinate.
  double own_curvature(std::size_t s, std::size_t i,
                       std::span<const double> q) const override {
    const double d = q[0] - q[1];
    const double direction = i == 0 ? 1.0 : -1.0;
    const double a = std::abs(d);
    const double t = thresholds_[s];
    const bool active = a > t || (a == t && direction * d > 0.0);
    const double hinge_term = active ? 2.0 : 0.0;
    if (i == 0) return hinge_term - 4.0;
    return -(hinge_term + 1.0);
  }
  std::vector<double> statistic_mean(std::size_t s,
                                     std::span<const double> q) const override {
    return {value(s, q)};
  }
  bool concave_in_own(std::size_t) const override { return true; }

 private:
  double hinge(std::size_t s, double d) const {
    return std::max(std::abs(d), thresholds_[s]) - thresholds_[s];
  }
  double value(std::size_t s, std::span<const double> q) const {
    const double h = hinge(s, q[0] - q[1]);
    return h * h - 2.0 * q[0] * q[0] + 0.5 * (q[1] - 2.0) * (q[1] - 2.0);
  }

  std::vector<double> thresholds_;
};

// Unit return r = s + q1 + q2; u_i = q_i r - 3 q_i^2.
class InvestmentPayoff final : public PayoffModel {
 public:
  explicit InvestmentPayoff(std::vector<double> baselines)
      : baselines_(std::move(baselines)) {
    if (baselines_.empty()) {
      throw ConfigError("payoff", "investment needs at least one baseline");
    }
  }

  PayoffKind kind() const override { return PayoffKind::kInvestment; }
  StatisticKind statistic_kind() const override {
    return StatisticKind::kScalarSufficientStatistic;
  }
  std::size_t num_players() const override { return 2; }
  std::size_t num_params() const override { return baselines_.size(); }

  double utility(std::size_t s, std::size_t i,
                 std::span<const double> q) const override {
    return q[i] * (baselines_[s] - 2.0 * q[i] + q[1 - i]);
  }
  double own_derivative(std::size_t s, std::size_t i,
                        std::span<const double> q) const override {
    return baselines_[s] - 4.0 * q[i] + q[1 - i];
  }
  double own_curvature(std::size_t, std::size_t,
                       std::span<const double>) const override {
    return -4.0;
  }
  std::optional<UnivariatePolynomial> own_polynomial(
      std::size_t s, std::size_t i,
      std::span<const double> q) const override {
    return UnivariatePolynomial({0.0, baselines_[s] + q[1 - i], -2.0});
  }
  std::vector<double> statistic_mean(std::size_t s,
                                     std::span<const double> q) const override {
    return {baselines_[s] + q[0] + q[1]};
  }
  std::vector<double> context(std::span<const double> q) const override {
    return {q[0] + q[1]};
  }
  bool concave_in_own(std::size_t) const override { return true; }

 private:
  std::vector<double> baselines_;
};

class PolynomialPayoff final : public PayoffModel {
 public:
  PolynomialPayoff(std::size_t n, std::vector<std::vector<Polynomial>> payoffs,
                   std::vector<bool> concave)
      : n_(n), payoffs_(std::move(payoffs)), concave_(std::move(concave)) {
    if (payoffs_.empty()) throw ConfigError("payoffs", "no parameters");
    if (concave_.size() != payoffs_.size()) {
      throw ConfigError("payoffs", "one concave_in_own flag per parameter");
    }
    for (const auto& per_player : payoffs_) {
      if (per_player.size() != n_) {
        throw ConfigError("payoffs",
                          "every parameter needs one polynomial per player");
      }
      for (const Polynomial& p : per_player) {
        for (const Monomial& m : p.terms()) {
          if (m.powers.size() != n_) {
            throw ConfigError("payoffs",
                              "monomial exponent count must equal players");
          }
          for (int e : m.powers) {
            if (e < 0) throw ConfigError("payoffs", "negative exponent");
          }
          if (!std::isfinite(m.coefficient)) {
            throw ConfigError("payoffs", "non-finite coefficient");
          }
        }
        if (p.total_degree() > kMaxPolynomialDegree) {
          throw ConfigError("payoffs", "total degree exceeds 4");
        }
      }
    }
  }

  PayoffKind kind() const override { return PayoffKind::kPolynomial; }
  StatisticKind statistic_kind() const override {
    return StatisticKind::kPerPlayerPayoffs;
  }
  std::size_t num_players() const override { return n_; }
  std::size_t num_params() const override { return payoffs_.size(); }

  double utility(std::size_t s, std::size_t i,
                 std::span<const double> q) const override {
    return payoffs_[s][i](q);
  }
  double own_derivative(std::size_t s, std::size_t i,
                        std::span<const double> q) const override {
    return payoffs_[s][i].partial(i, q);
  }
  double own_curvature(std::size_t s, std::size_t i,
                       std::span<const double> q) const override {
    return payoffs_[s][i].second_partial(i, q);
  }
  std::optional<UnivariatePolynomial> own_polynomial(
      std::size_t s, std::size_t i,
      std::span<const double> q) const override {
    return payoffs_[s][i].restrict_to(i, q);
  }
  std::vector<double> statistic_mean(std::size_t s,
                                     std::span<const double> q) const override {
    std::vector<double> m(n_);
    for (std::size_t i = 0; i < n_; ++i) m[i] = payoffs_[s][i](q);
    return m;
  }
  bool concave_in_own(std::size_t s) const override { return concave_[s]; }

 private:
  std::size_t n_;
  std::vector<std::vector<Polynomial>> payoffs_;
  std::vector<bool> concave_;
};

}  // namespace

std::shared_ptr<const PayoffModel> make_cournot_payoff(
    std::size_t num_players, std::vector<double> intercepts,
    std::vector<double> slopes) {
  return std::make_shared<CournotPayoff>(num_players, std::move(intercepts),
                                         std::move(slopes));
}

std::shared_ptr<const PayoffModel> make_zero_sum_payoff(
    std::vector<double> thresholds) {
  return std::make_shared<ZeroSumPayoff>(std::move(thresholds));
}

std::shared_ptr<const PayoffModel> make_investment_payoff(
    std::vector<double> baselines) {
  return std::make_shared<InvestmentPayoff>(std::move(baselines));
}

std::shared_ptr<const PayoffModel> make_polynomial_payoff(
    std::size_t num_players, std::vector<std::vector<Polynomial>> payoffs,
    std::vector<bool> concave) {
  return std::make_shared<PolynomialPayoff>(num_players, std::move(payoffs),
                                            std::move(concave));
}

GameSpec::GameSpec(std::string name, std::vector<Interval> strategy_sets,
                   ParameterSet params,
                   std::shared_ptr<const PayoffModel> payoff, double sigma)
    : name_(std::move(name)),
      strategy_sets_(std::move(strategy_sets)),
      params_(std::move(params)),
      payoff_(std::move(payoff)),
      sigma_(sigma) {
  if (strategy_sets_.size() < 2) {
    throw ConfigError("players", "a game needs at least two players");
  }
  for (const Interval& set : strategy_sets_) {
    if (!std::isfinite(set.lo) || !std::isfinite(set.hi)) {
      throw ConfigError("strategy_sets", "bounds must be finite");
    }
    if (!(set.lo < set.hi)) {
      throw ConfigError("strategy_sets", "lo must be strictly below hi");
    }
  }
  if (!payoff_) throw ConfigError("payoff", "missing payoff model");
  if (payoff_->num_players() != strategy_sets_.size()) {
    throw ConfigError("players",
                      "payoff model and strategy sets disagree on players");
  }
  if (payoff_->num_params() != params_.size()) {
    throw ConfigError("params",
                      "payoff model and parameter set disagree on size");
  }
  if (!(sigma_ > 0.0) || !std::isfinite(sigma_)) {
    throw ConfigError("sigma", "noise standard deviation must be > 0");
  }
}

bool GameSpec::is_feasible(std::span<const double> q) const {
  if (q.size() != strategy_sets_.size()) return false;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!strategy_sets_[i].contains(q[i])) return false;
  }
  return true;
}

void GameSpec::check_feasible(std::span<const double> q) const {
  if (q.size() != strategy_sets_.size()) {
    std::ostringstream os;
    os << "strategy profile has " << q.size() << " entries, game has "
       << strategy_sets_.size() << " players";
    fail(ErrorKind::kConfig, os.str());
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!strategy_sets_[i].contains(q[i])) {
      std::ostringstream os;
      os << "strategy of player " << i << " (" << q[i] << ") outside ["
         << strategy_sets_[i].lo << ", " << strategy_sets_[i].hi << "]";
      fail(ErrorKind::kDomain, os.str());
    }
  }
}

void GameSpec::check_belief(const Belief& theta) const {
  if (theta.size() != params_.size()) {
    std::ostringstream os;
    os << "belief has " << theta.size() << " entries, game has "
       << params_.size() << " parameters";
    fail(ErrorKind::kConfig, os.str());
  }
}

double expected_utility(const GameSpec& spec, const Belief& theta,
                        std::size_t i, std::span<const double> q) {
  spec.check_feasible(q);
  spec.check_belief(theta);
  double value = 0.0;
  for (std::size_t s = 0; s < theta.size(); ++s) {
    const double w = theta.probability(s);
    if (w > 0.0) value += w * spec.payoff().utility(s, i, q);
  }
  return value;
}

double utility_gradient_own(const GameSpec& spec, const Belief& theta,
                            std::size_t i, std::span<const double> q) {
  spec.check_feasible(q);
  spec.check_belief(theta);
  double value = 0.0;
  for (std::size_t s = 0; s < theta.size(); ++s) {
    const double w = theta.probability(s);
    if (w > 0.0) value += w * spec.payoff().own_derivative(s, i, q);
  }
  return value;
}

std::vector<double> statistic_mean(const GameSpec& spec, std::size_t s,
                                   std::span<const double> q) {
  return spec.payoff().statistic_mean(s, q);
}

Observation sample_observation(const GameSpec& spec, std::span<const double> q,
                               RandomStream& rng) {
  spec.check_feasible(q);
  Observation obs;
  obs.statistic = spec.payoff().statistic_mean(spec.true_index(), q);
  for (double& y : obs.statistic) y += spec.sigma() * rng.normal();
  obs.context = spec.payoff().context(q);
  return obs;
}

double log_likelihood(const GameSpec& spec, std::size_t s,
                      const Observation& obs, std::span<const double> q) {
  if (!spec.payoff().informative(q)) return 0.0;
  const std::vector<double> mean = spec.payoff().statistic_mean(s, q);
  if (mean.size() != obs.statistic.size()) {
    fail(ErrorKind::kConfig, "observation does not match the game's statistic");
  }
  const double sigma = spec.sigma();
  const double log_norm = std::log(sigma * std::sqrt(2.0 * std::numbers::pi));
  double ll = 0.0;
  for (std::size_t c = 0; c < mean.size(); ++c) {
    const double z = (obs.statistic[c] - mean[c]) / sigma;
    ll += -0.5 * z * z - log_norm;
  }
  return ll;
}

}  // namespace bgl

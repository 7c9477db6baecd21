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

#ifndef BGL_GAME_HPP_
#define BGL_GAME_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bgl/polynomial.hpp"
#include "bgl/rng.hpp"

namespace bgl {

class Belief;

// One scalar strategy per player.
using StrategyProfile = std::vector<double>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
  double width() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite parameter set S with the true parameter s*.
class ParameterSet {
 public:
  ParameterSet(std::vector<std::string> ids, std::size_t true_index);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t s) const { return ids_.at(s); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::size_t true_index() const { return true_index_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

 private:
  std::vector<std::string> ids_;
  std::size_t true_index_;
};

enum class PayoffKind { kCournot, kZeroSum, kInvestment, kPolynomial };
enum class StatisticKind { kPerPlayerPayoffs, kScalarSufficientStatistic };

const char* to_string(PayoffKind kind);

// One noisy observation. `statistic` is the noisy part (price, return, value,
// or the payoff vector); `context` carries noise-free aggregates the platform
// also sees (total quantity / total investment), empty when there are none.
struct Observation {
  std::vector<double> statistic;
  std::vector<double> context;
  friend bool operator==(const Observation&, const Observation&) = default;
};

// Average payoffs u_i^s(q) and the mean of the observed statistic for every
// parameter s. Implementations are immutable.
class PayoffModel {
 public:
  virtual ~PayoffModel() = default;

  virtual PayoffKind kind() const = 0;
  virtual StatisticKind statistic_kind() const = 0;
  virtual std::size_t num_players() const = 0;
  virtual std::size_t num_params() const = 0;

  virtual double utility(std::size_t s, std::size_t i,
                         std::span<const double> q) const = 0;
  // d u_i^s / d q_i, exact.
  virtual double own_derivative(std::size_t s, std::size_t i,
                                std::span<const double> q) const = 0;
  // d^2 u_i^s / d q_i^2, exact where it exists.
  virtual double own_curvature(std::size_t s, std::size_t i,
                               std::span<const double> q) const = 0;

  // u_i^s restricted to player i's own coordinate, when polynomial.
  virtual std::optional<UnivariatePolynomial> own_polynomial(
      std::size_t /*s*/, std::size_t /*i*/,
      std::span<const double> /*q*/) const {
    return std::nullopt;
  }

  virtual std::vector<double> statistic_mean(
      std::size_t s, std::span<const double> q) const = 0;
  virtual std::vector<double> context(std::span<const double> /*q*/) const {
    return {};
  }
  // False where the observation carries no information about s at q (the
  // likelihood is then constant across parameters).
  virtual bool informative(std::span<const double> /*q*/) const {
    return true;
  }

  virtual bool concave_in_own(std::size_t s) const = 0;
};

// Builtin payoff families. Parameter s of each family is given by the
// constants at index s.
std::shared_ptr<const PayoffModel> make_cournot_payoff(
    std::size_t num_players, std::vector<double> intercepts,
    std::vector<double> slopes);
std::shared_ptr<const PayoffModel> make_zero_sum_payoff(
    std::vector<double> thresholds);
std::shared_ptr<const PayoffModel> make_investment_payoff(
    std::vector<double> baselines);
// payoffs[s][i] is u_i^s; concave[s] the declared concavity flag.
std::shared_ptr<const PayoffModel> make_polynomial_payoff(
    std::size_t num_players, std::vector<std::vector<Polynomial>> payoffs,
    std::vector<bool> concave);

inline constexpr int kMaxPolynomialDegree = 4;

class GameSpec {
 public:
  GameSpec(std::string name, std::vector<Interval> strategy_sets,
           ParameterSet params, std::shared_ptr<const PayoffModel> payoff,
           double sigma);

  const std::string& name() const { return name_; }
  std::size_t num_players() const { return strategy_sets_.size(); }
  std::size_t num_params() const { return params_.size(); }
  const Interval& strategy_set(std::size_t i) const {
    return strategy_sets_.at(i);
  }
  const std::vector<Interval>& strategy_sets() const { return strategy_sets_; }
  const ParameterSet& params() const { return params_; }
  std::size_t true_index() const { return params_.true_index(); }
  const PayoffModel& payoff() const { return *payoff_; }
  double sigma() const { return sigma_; }
  StatisticKind statistic_kind() const { return payoff_->statistic_kind(); }

  bool is_feasible(std::span<const double> q) const;
  // Throws kConfig on a size mismatch and kDomain on an infeasible profile.
  void check_feasible(std::span<const double> q) const;
  // Throws kConfig unless theta is a belief over this game's parameters.
  void check_belief(const Belief& theta) const;

 private:
  std::string name_;
  std::vector<Interval> strategy_sets_;
  ParameterSet params_;
  std::shared_ptr<const PayoffModel> payoff_;
  double sigma_;
};

// E_theta[u_i^s(q)].
double expected_utility(const GameSpec& spec, const Belief& theta,
                        std::size_t i, std::span<const double> q);

// d/dq_i E_theta[u_i^s(q)].
double utility_gradient_own(const GameSpec& spec, const Belief& theta,
                            std::size_t i, std::span<const double> q);

std::vector<double> statistic_mean(const GameSpec& spec, std::size_t s,
                                   std::span<const double> q);

// Draws an observation at q under the true parameter.
Observation sample_observation(const GameSpec& spec, std::span<const double> q,
                               RandomStream& rng);

// Gaussian log-density of obs under parameter s at q. Returns 0 for every s
// when the observation is uninformative at q.
double log_likelihood(const GameSpec& spec, std::size_t s,
                      const Observation& obs, std::span<const double> q);

}  // namespace bgl

#endif  // BGL_GAME_HPP_

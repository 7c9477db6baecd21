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

#ifndef BGL_BELIEF_HPP_
#define BGL_BELIEF_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "bgl/game.hpp"

namespace bgl {

inline constexpr double kDefaultKlTolerance = 1e-9;

// Probability vector over the parameter set, held as normalized log
// probabilities. Excluded parameters sit at -inf and stay there: Bayes'
// rule only adds finite log-likelihoods.
class Belief {
 public:
  static Belief uniform(std::size_t n);
  static Belief point_mass(std::size_t n, std::size_t s);
  // Rejects negative entries and sums further than `tol` from 1, then
  // renormalizes exactly.
  static Belief from_probabilities(std::span<const double> p,
                                   double tol = 1e-9);
  // Any finite-or-(-inf) weights with at least one finite entry.
  static Belief from_log_weights(std::vector<double> log_weights);

  std::size_t size() const { return log_p_.size(); }
  double probability(std::size_t s) const;
  std::vector<double> probabilities() const;
  double log_probability(std::size_t s) const { return log_p_.at(s); }
  const std::vector<double>& log_probabilities() const { return log_p_; }
  // [theta]: parameters with positive probability.
  std::vector<std::size_t> support() const;

  friend bool operator==(const Belief&, const Belief&) = default;

 private:
  explicit Belief(std::vector<double> log_p) : log_p_(std::move(log_p)) {}
  std::vector<double> log_p_;
};

double log_sum_exp(std::span<const double> x);

// Euclidean distance between probability vectors.
double distance(const Belief& a, const Belief& b);

struct ObservedStage {
  StrategyProfile q;
  Observation obs;
};
using ObservationBatch = std::vector<ObservedStage>;

// Bayes' rule over a batch of stages.
Belief bayes_update(const GameSpec& spec, const Belief& prior,
                    const ObservationBatch& batch);
// Single-stage form of the same update.
Belief bayes_update(const GameSpec& spec, const Belief& prior,
                    std::span<const double> q, const Observation& obs);

// KL divergence of parameter s_to's observation law from s_from's at q.
double kl_divergence(const GameSpec& spec, std::size_t s_from,
                     std::size_t s_to, std::span<const double> q);

// S*(q): parameters whose observation law at q is within `tol` (in KL) of
// the true parameter's. Always contains s*.
std::vector<std::size_t> payoff_equivalent_set(
    const GameSpec& spec, std::span<const double> q,
    double tol = kDefaultKlTolerance);

// theta(s) / theta(s*), computed in log space.
double belief_ratio(const Belief& b, std::size_t s, std::size_t true_index);

// Mixture mean sum_s theta(s) m^s(q) of the observed statistic.
std::vector<double> mixture_mean(const GameSpec& spec, const Belief& theta,
                                 std::span<const double> q);

}  // namespace bgl

#endif  // BGL_BELIEF_HPP_

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

#include "bgl/belief.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bgl/error.hpp"

namespace bgl {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_sum_exp(std::span<const double> x) {
  double peak = kNegInf;
  for (double v : x) peak = std::max(peak, v);
  if (peak == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

Belief Belief::uniform(std::size_t n) {
  if (n == 0) fail(ErrorKind::kConfig, "belief over an empty parameter set");
  return Belief(std::vector<double>(n, -std::log(static_cast<double>(n))));
}

Belief Belief::point_mass(std::size_t n, std::size_t s) {
  if (s >= n) fail(ErrorKind::kConfig, "point mass index out of range");
  std::vector<double> log_p(n, kNegInf);
  log_p[s] = 0.0;
  return Belief(std::move(log_p));
}

Belief Belief::from_probabilities(std::span<const double> p, double tol) {
  if (p.empty()) fail(ErrorKind::kConfig, "belief over an empty parameter set");
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      fail(ErrorKind::kDomain, "belief entries must be finite and >= 0");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "belief entries sum to " << sum << ", not 1";
    fail(ErrorKind::kDomain, os.str());
  }
  std::vector<double> log_p(p.size());
  for (std::size_t s = 0; s < p.size(); ++s) {
    log_p[s] = p[s] > 0.0 ? std::log(p[s] / sum) : kNegInf;
  }
  return Belief(std::move(log_p));
}

Belief Belief::from_log_weights(std::vector<double> log_weights) {
  if (log_weights.empty()) {
    fail(ErrorKind::kConfig, "belief over an empty parameter set");
  }
  for (double w : log_weights) {
    if (std::isnan(w) || w == std::numeric_limits<double>::infinity()) {
      fail(ErrorKind::kNumeric, "log weight is NaN or +inf");
    }
  }
  const double norm = log_sum_exp(log_weights);
  if (norm == kNegInf) {
    fail(ErrorKind::kImpossibleEvidence, "every parameter has zero weight");
  }
  for (double& w : log_weights) {
    if (w != kNegInf) w -= norm;
  }
  return Belief(std::move(log_weights));
}

double Belief::probability(std::size_t s) const {
  return std::exp(log_p_.at(s));
}

std::vector<double> Belief::probabilities() const {
  std::vector<double> p(log_p_.size());
  for (std::size_t s = 0; s < p.size(); ++s) p[s] = std::exp(log_p_[s]);
  return p;
}

std::vector<std::size_t> Belief::support() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < log_p_.size(); ++s) {
    if (std::exp(log_p_[s]) > 0.0) out.push_back(s);
  }
  return out;
}

double distance(const Belief& a, const Belief& b) {
  if (a.size() != b.size()) fail(ErrorKind::kConfig, "belief size mismatch");
  double sum = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    const double d = a.probability(s) - b.probability(s);
    sum += d * d;
  }
  return std::sqrt(sum);
}

Belief bayes_update(const GameSpec& spec, const Belief& prior,
                    const ObservationBatch& batch) {
  spec.check_belief(prior);
  if (batch.empty()) fail(ErrorKind::kConfig, "empty observation batch");
  std::vector<double> log_w = prior.log_probabilities();
  for (const ObservedStage& stage : batch) {
    spec.check_feasible(stage.q);
    for (std::size_t s = 0; s < log_w.size(); ++s) {
      if (log_w[s] == kNegInf) continue;
      const double ll = log_likelihood(spec, s, stage.obs, stage.q);
      if (std::isnan(ll)) fail(ErrorKind::kNumeric, "log-likelihood is NaN");
      log_w[s] += ll;
    }
  }
  return Belief::from_log_weights(std::move(log_w));
}

Belief bayes_update(const GameSpec& spec, const Belief& prior,
                    std::span<const double> q, const Observation& obs) {
  ObservationBatch batch{{StrategyProfile(q.begin(), q.end()), obs}};
  return bayes_update(spec, prior, batch);
}

double kl_divergence(const GameSpec& spec, std::size_t s_from,
                     std::size_t s_to, std::span<const double> q) {
  spec.check_feasible(q);
  if (s_from >= spec.num_params() || s_to >= spec.num_params()) {
    fail(ErrorKind::kConfig, "parameter index out of range");
  }
  if (s_from == s_to || !spec.payoff().informative(q)) return 0.0;
  const std::vector<double> a = spec.payoff().statistic_mean(s_from, q);
  const std::vector<double> b = spec.payoff().statistic_mean(s_to, q);
  double sq = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) sq += (a[c] - b[c]) * (a[c] - b[c]);
  return sq / (2.0 * spec.sigma() * spec.sigma());
}

std::vector<std::size_t> payoff_equivalent_set(const GameSpec& spec,
                                               std::span<const double> q,
                                               double tol) {
  if (!(tol > 0.0)) fail(ErrorKind::kDomain, "KL tolerance must be > 0");
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < spec.num_params(); ++s) {
    if (kl_divergence(spec, spec.true_index(), s, q) <= tol) out.push_back(s);
  }
  return out;
}

double belief_ratio(const Belief& b, std::size_t s, std::size_t true_index) {
  const double log_star = b.log_probability(true_index);
  if (log_star == kNegInf) {
    fail(ErrorKind::kInvariant, "true parameter has zero belief");
  }
  return std::exp(b.log_probability(s) - log_star);
}

std::vector<double> mixture_mean(const GameSpec& spec, const Belief& theta,
                                 std::span<const double> q) {
  spec.check_belief(theta);
  std::vector<double> mean;
  for (std::size_t s = 0; s < theta.size(); ++s) {
    const double w = theta.probability(s);
    if (w == 0.0) continue;
    const std::vector<double> m = spec.payoff().statistic_mean(s, q);
    if (mean.empty()) mean.assign(m.size(), 0.0);
    for (std::size_t c = 0; c < m.size(); ++c) mean[c] += w * m[c];
  }
  return mean;
}

}  // namespace bgl

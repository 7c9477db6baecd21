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

#include "bgl/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bgl {

UnivariatePolynomial::UnivariatePolynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {}

int UnivariatePolynomial::degree() const {
  for (int p = static_cast<int>(coeffs_.size()) - 1; p >= 0; --p) {
    if (coeffs_[p] != 0.0) return p;
  }
  return -1;
}

double UnivariatePolynomial::operator()(double x) const {
  double value = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    value = value * x + *it;
  }
  return value;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
  if (coeffs_.size() <= 1) return UnivariatePolynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t p = 1; p < coeffs_.size(); ++p) {
    d[p - 1] = static_cast<double>(p) * coeffs_[p];
  }
  return UnivariatePolynomial(std::move(d));
}

UnivariatePolynomial& UnivariatePolynomial::operator+=(
    const UnivariatePolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) {
    coeffs_.resize(other.coeffs_.size(), 0.0);
  }
  for (std::size_t p = 0; p < other.coeffs_.size(); ++p) {
    coeffs_[p] += other.coeffs_[p];
  }
  return *this;
}

UnivariatePolynomial& UnivariatePolynomial::operator*=(double scale) {
  for (double& c : coeffs_) c *= scale;
  return *this;
}

Polynomial::Polynomial(std::vector<Monomial> terms)
    : terms_(std::move(terms)) {}

int Polynomial::total_degree() const {
  int degree = 0;
  for (const Monomial& m : terms_) {
    if (m.coefficient == 0.0) continue;
    degree = std::max(degree, std::accumulate(m.powers.begin(),
                                              m.powers.end(), 0));
  }
  return degree;
}

namespace {

double power(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

// Product of q_j^{e_j} over j != skip.
double others(const Monomial& m, std::size_t skip, std::span<const double> q) {
  double r = m.coefficient;
  for (std::size_t j = 0; j < m.powers.size(); ++j) {
    if (j != skip) r *= power(q[j], m.powers[j]);
  }
  return r;
}

}  // namespace

double Polynomial::operator()(std::span<const double> q) const {
  double value = 0.0;
  for (const Monomial& m : terms_) {
    double t = m.coefficient;
    for (std::size_t j = 0; j < m.powers.size(); ++j) {
      t *= power(q[j], m.powers[j]);
    }
    value += t;
  }
  return value;
}

double Polynomial::partial(std::size_t i, std::span<const double> q) const {
  double value = 0.0;
  for (const Monomial& m : terms_) {
    const int e = m.powers[i];
    if (e == 0) continue;
    value += others(m, i, q) * e * power(q[i], e - 1);
  }
  return value;
}

double Polynomial::second_partial(std::size_t i,
                                  std::span<const double> q) const {
  double value = 0.0;
  for (const Monomial& m : terms_) {
    const int e = m.powers[i];
    if (e < 2) continue;
    value += others(m, i, q) * e * (e - 1) * power(q[i], e - 2);
  }
  return value;
}

UnivariatePolynomial Polynomial::restrict_to(std::size_t i,
                                             std::span<const double> q) const {
  std::vector<double> coeffs(1, 0.0);
  for (const Monomial& m : terms_) {
    const auto e = static_cast<std::size_t>(m.powers[i]);
    if (coeffs.size() <= e) coeffs.resize(e + 1, 0.0);
    coeffs[e] += others(m, i, q);
  }
  return UnivariatePolynomial(std::move(coeffs));
}

}  // namespace bgl

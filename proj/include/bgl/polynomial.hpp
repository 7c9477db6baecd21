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

#ifndef BGL_POLYNOMIAL_HPP_
#define BGL_POLYNOMIAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace bgl {

// Dense polynomial in one variable, coefficients in ascending order.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<double> coefficients);

  // Highest index with a non-zero coefficient; -1 for the zero polynomial.
  int degree() const;
  double coefficient(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : 0.0;
  }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double operator()(double x) const;
  UnivariatePolynomial derivative() const;

  UnivariatePolynomial& operator+=(const UnivariatePolynomial& other);
  UnivariatePolynomial& operator*=(double scale);

 private:
  std::vector<double> coeffs_;
};

struct Monomial {
  double coefficient = 0.0;
  std::vector<int> powers;  // one exponent per player
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Sparse polynomial in the joint strategy vector.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const { return terms_; }
  int total_degree() const;

  double operator()(std::span<const double> q) const;
  double partial(std::size_t i, std::span<const double> q) const;
  double second_partial(std::size_t i, std::span<const double> q) const;
  // The polynomial in q_i with every other coordinate fixed at q.
  UnivariatePolynomial restrict_to(std::size_t i,
                                   std::span<const double> q) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Monomial> terms_;
};

}  // namespace bgl

#endif  // BGL_POLYNOMIAL_HPP_

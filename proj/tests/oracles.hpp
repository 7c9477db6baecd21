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


// Hand-written payoff and likelihood formulas, kept apart from the library
// code they check.

#ifndef BGL_TESTS_ORACLES_HPP_
#define BGL_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

// Cournot with two firms: price alpha - beta * (q1 + q2).
inline constexpr double kCournotAlpha[2] = {2.0, 4.0};
inline constexpr double kCournotBeta[2] = {1.0, 3.0};

inline double cournot_price(int s, double q1, double q2) {
  return kCournotAlpha[s] - kCournotBeta[s] * (q1 + q2);
}

inline double cournot_utility(int s, int i, double q1, double q2) {
  return (i == 0 ? q1 : q2) * cournot_price(s, q1, q2);
}

inline constexpr double kZeroSumS[3] = {1.0, 3.0, 5.0};

inline double zero_sum_value(int s, double q1, double q2) {
  const double gap = std::max(std::abs(q1 - q2), kZeroSumS[s]) - kZeroSumS[s];
  return gap * gap - 2.0 * q1 * q1 + 0.5 * (q2 - 2.0) * (q2 - 2.0);
}

inline double zero_sum_utility(int s, int i, double q1, double q2) {
  const double v = zero_sum_value(s, q1, q2);
  return i == 0 ? v : -v;
}

inline constexpr double kInvestmentS[3] = {0.0, 1.0, 2.0};

inline double investment_return(int s, double q1, double q2) {
  return kInvestmentS[s] + q1 + q2;
}

inline double investment_utility(int s, int i, double q1, double q2) {
  const double own = i == 0 ? q1 : q2;
  return own * investment_return(s, q1, q2) - 3.0 * own * own;
}

// log N(x; m, sigma^2).
inline double log_normal_pdf(double x, double m, double sigma) {
  const double z = (x - m) / sigma;
  return -0.5 * z * z - std::log(sigma) - 0.5 * std::log(2.0 * M_PI);
}

}  // namespace oracle

#endif  // BGL_TESTS_ORACLES_HPP_

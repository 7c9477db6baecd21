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


#ifndef BGL_REPORT_HPP_
#define BGL_REPORT_HPP_

#include <string>

#include "json.hpp"

#include "bgl/analysis.hpp"
#include "bgl/dynamics.hpp"
#include "bgl/examples.hpp"
#include "bgl/game.hpp"
#include "bgl/learners.hpp"

namespace bgl {

// Machine-readable (JSON) and human-readable forms of every report. The
// spec supplies parameter labels.

nlohmann::json belief_json(const GameSpec& spec, const Belief& theta);

nlohmann::json report_json(const GameSpec& spec, const Belief& theta,
                           const EquilibriumResult& r);
std::string report_text(const GameSpec& spec, const Belief& theta,
                        const EquilibriumResult& r);

nlohmann::json report_json(const GameSpec& spec, const FixedPointReport& r);
std::string report_text(const GameSpec& spec, const FixedPointReport& r);

nlohmann::json report_json(const GameSpec& spec, const RateEstimate& r);
std::string report_text(const GameSpec& spec, const RateEstimate& r);

nlohmann::json report_json(const GameSpec& spec, const MartingaleReport& r);
std::string report_text(const GameSpec& spec, const MartingaleReport& r);

nlohmann::json report_json(const StabilityReport& r);
std::string report_text(const StabilityReport& r);

nlohmann::json report_json(const Thresholds& r);
std::string report_text(const Thresholds& r);

nlohmann::json report_json(const GameSpec& spec, const GlobalScanReport& r);
std::string report_text(const GameSpec& spec, const GlobalScanReport& r);

nlohmann::json report_json(const GameSpec& spec,
                           const CompleteLearningReport& r);
std::string report_text(const GameSpec& spec, const CompleteLearningReport& r);

nlohmann::json report_json(const GameSpec& spec,
                           const StaticConvergenceReport& r);
std::string report_text(const GameSpec& spec, const StaticConvergenceReport& r);

nlohmann::json report_json(const GameSpec& spec, const TrajectorySummary& r);
std::string report_text(const GameSpec& spec, const TrajectorySummary& r);

std::string format_vector(const std::vector<double>& v, int digits = 6);

}  // namespace bgl

#endif  // BGL_REPORT_HPP_

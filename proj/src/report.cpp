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


#include "bgl/report.hpp"

#include <cstdio>
#include <sstream>

namespace bgl {

using nlohmann::json;

namespace {

std::string labels(const GameSpec& spec, const std::vector<std::size_t>& set) {
  std::string out = "{";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) out += ", ";
    out += spec.params().id(set[k]);
  }
  return out + "}";
}

json label_list(const GameSpec& spec, const std::vector<std::size_t>& set) {
  json out = json::array();
  for (std::size_t s : set) out.push_back(spec.params().id(s));
  return out;
}

std::string num(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string format_vector(const std::vector<double>& v, int digits) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += num(v[k], digits);
  }
  return out + ")";
}

json belief_json(const GameSpec& spec, const Belief& theta) {
  json out = json::object();
  for (std::size_t s = 0; s < theta.size(); ++s) {
    out[spec.params().id(s)] = theta.probability(s);
  }
  return out;
}

json report_json(const GameSpec& spec, const Belief& theta,
                 const EquilibriumResult& r) {
  return {{"report", "equilibrium"},
          {"game", spec.name()},
          {"theta", belief_json(spec, theta)},
          {"equilibria", r.equilibria},
          {"converged_starts", r.converged_starts},
          {"total_starts", r.total_starts},
          {"warnings", r.warnings}};
}

std::string report_text(const GameSpec&, const Belief&,
                        const EquilibriumResult& r) {
  std::ostringstream os;
  os << "equilibria: " << r.equilibria.size() << " found ("
     << r.converged_starts << "/" << r.total_starts << " starts converged)\n";
  for (const StrategyProfile& q : r.equilibria) os << "  " << format_vector(q) << "\n";
  for (const std::string& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

json report_json(const GameSpec& spec, const FixedPointReport& r) {
  return {{"report", "fixed_point"},
          {"game", spec.name()},
          {"support", label_list(spec, r.support)},
          {"payoff_equivalent", label_list(spec, r.payoff_equivalent)},
          {"support_subset_ok", r.support_subset_ok},
          {"br_residual", r.br_residual},
          {"is_equilibrium", r.is_equilibrium},
          {"is_complete_info", r.is_complete_info},
          {"is_fixed_point", r.is_fixed_point},
          {"kl_tol", r.kl_tol},
          {"br_tol", r.br_tol}};
}

std::string report_text(const GameSpec& spec, const FixedPointReport& r) {
  std::ostringstream os;
  os << "support            " << labels(spec, r.support) << "\n"
     << "payoff-equivalent  " << labels(spec, r.payoff_equivalent) << "\n"
     << "support subset     " << yes_no(r.support_subset_ok) << "\n"
     << "br residual        " << format_vector(r.br_residual, 3) << "\n"
     << "equilibrium        " << yes_no(r.is_equilibrium) << "\n"
     << "complete info      " << yes_no(r.is_complete_info) << "\n"
     << "fixed point        " << yes_no(r.is_fixed_point) << "\n";
  return os.str();
}

json report_json(const GameSpec& spec, const RateEstimate& r) {
  return {{"report", "rate"},
          {"param", spec.params().id(r.param)},
          {"slope", r.slope},
          {"intercept", r.intercept},
          {"predicted_slope", r.predicted_slope},
          {"first_stage", r.first_stage},
          {"points", r.points}};
}

std::string report_text(const GameSpec& spec, const RateEstimate& r) {
  std::ostringstream os;
  os << "param " << spec.params().id(r.param) << ": slope " << num(r.slope)
     << " (predicted " << num(r.predicted_slope) << ", stages "
     << r.first_stage << ".." << r.first_stage + r.points - 1 << ")\n";
  return os.str();
}

json report_json(const GameSpec& spec, const MartingaleReport& r) {
  json entries = json::array();
  for (const MartingaleEntry& e : r.entries) {
    entries.push_back({{"param", spec.params().id(e.param)},
                       {"current_ratio", e.current_ratio},
                       {"mean_next_ratio", e.mean_next_ratio},
                       {"standard_error", e.standard_error},
                       {"pass", e.pass}});
  }
  return {{"report", "martingale"},
          {"samples", r.samples},
          {"se_band", r.se_band},
          {"entries", entries},
          {"pass", r.pass}};
}

std::string report_text(const GameSpec& spec, const MartingaleReport& r) {
  std::ostringstream os;
  for (const MartingaleEntry& e : r.entries) {
    os << "param " << spec.params().id(e.param) << ": ratio "
       << num(e.current_ratio) << ", next mean " << num(e.mean_next_ratio)
       << " +- " << num(e.standard_error, 3) << (e.pass ? "  ok" : "  FAIL")
       << "\n";
  }
  os << (r.pass ? "PASS" : "FAIL") << " (" << r.samples << " samples, "
     << r.se_band << " SE band)\n";
  return os.str();
}

json report_json(const StabilityReport& r) {
  json out = {{"report", "local_stability"},
              {"gamma", r.params.gamma},
              {"eps_bar", r.params.eps_bar},
              {"eps_x", r.params.eps_x},
              {"eps1", r.params.eps1},
              {"delta1", r.params.delta1},
              {"horizon", r.params.horizon},
              {"seed", r.params.seed},
              {"n_runs", r.n_runs},
              {"failed_runs", r.failed_runs},
              {"final_neighborhood_fraction", r.final_neighborhood_fraction},
              {"containment_fraction", r.containment_fraction},
              {"exceeds_gamma", r.exceeds_gamma},
              {"note", "limit probability truncated at the horizon"}};
  if (r.escape_fraction) {
    out["escape_fraction"] = *r.escape_fraction;
    out["escape_radius"] = r.params.escape_radius;
  }
  return out;
}

std::string report_text(const StabilityReport& r) {
  std::ostringstream os;
  os << "gamma " << num(r.params.gamma) << ", eps_bar " << num(r.params.eps_bar)
     << ", eps_x " << num(r.params.eps_x) << ", eps1 " << num(r.params.eps1)
     << ", delta1 " << num(r.params.delta1) << ", horizon " << r.params.horizon
     << "\n"
     << "runs " << r.n_runs << " (failed " << r.failed_runs << ")\n"
     << "final in neighborhood  " << num(r.final_neighborhood_fraction)
     << (r.exceeds_gamma ? "  > gamma" : "  <= gamma") << "\n"
     << "path contained         " << num(r.containment_fraction) << "\n";
  if (r.escape_fraction) {
    os << "ended near target      " << num(*r.escape_fraction) << " (radius "
       << num(r.params.escape_radius) << ")\n";
  }
  return os.str();
}

json report_json(const Thresholds& r) {
  return {{"report", "thresholds"},
          {"rho1", r.rho1},
          {"rho2", r.rho2},
          {"rho3", r.rho3},
          {"rho1_bound", r.rho1_bound},
          {"rho3_bound", r.rho3_bound},
          {"epsilon1", r.epsilon1()},
          {"ratio_interval_nonempty", r.ratio_interval_nonempty}};
}

std::string report_text(const Thresholds& r) {
  std::ostringstream os;
  os << "rho1 = " << num(r.rho1) << "\n"
     << "rho2 = " << num(r.rho2) << "\n"
     << "rho3 = " << num(r.rho3) << "\n"
     << "eps1 = min(rho1, rho3) = " << num(r.epsilon1()) << "\n"
     << "ratio interval non-empty: " << yes_no(r.ratio_interval_nonempty)
     << "\n";
  return os.str();
}

json report_json(const GameSpec& spec, const GlobalScanReport& r) {
  json violations = json::array();
  for (const GlobalScanPoint& v : r.violations) {
    violations.push_back({{"theta", belief_json(spec, v.theta)}, {"q", v.q}});
  }
  json failures = json::array();
  for (const GlobalScanFailure& f : r.failures) {
    failures.push_back({{"theta", belief_json(spec, f.theta)}, {"message", f.message}});
  }
  return {{"report", "global_stability"},
          {"game", spec.name()},
          {"resolution", r.resolution},
          {"grid_points", r.grid_points},
          {"violations", violations},
          {"failures", failures},
          {"no_violation_found", r.no_violation_found()}};
}

std::string report_text(const GameSpec& spec, const GlobalScanReport& r) {
  std::ostringstream os;
  os << "scanned " << r.grid_points << " beliefs at resolution "
     << r.resolution << "\n";
  if (r.no_violation_found()) {
    os << "no incomplete-information fixed point found at this resolution\n";
  } else {
    os << r.violations.size() << " incomplete-information fixed point(s):\n";
    for (const GlobalScanPoint& v : r.violations) {
      os << "  theta " << format_vector(v.theta.probabilities()) << "  q "
         << format_vector(v.q, 9) << "\n";
    }
  }
  for (const GlobalScanFailure& f : r.failures) {
    os << "solver failure at theta " << format_vector(f.theta.probabilities())
       << ": " << f.message << "\n";
  }
  (void)spec;
  return os.str();
}

json report_json(const GameSpec& spec, const CompleteLearningReport& r) {
  json out = {{"report", "complete_learning"},
              {"verdict", to_string(r.verdict)},
              {"support", label_list(spec, r.support)},
              {"local_consistency", r.local_consistency},
              {"concavity", r.concavity},
              {"concavity_method", r.concavity_method},
              {"probes", r.probes}};
  if (r.witness) {
    out["witness"] = {{"q", *r.witness},
                      {"param", spec.params().id(*r.witness_param)},
                      {"kl", r.witness_kl}};
  }
  return out;
}

std::string report_text(const GameSpec& spec, const CompleteLearningReport& r) {
  std::ostringstream os;
  os << to_string(r.verdict) << "\n"
     << "support            " << labels(spec, r.support) << "\n"
     << "local consistency  " << yes_no(r.local_consistency) << " (" << r.probes
     << " probes)\n"
     << "concavity          " << yes_no(r.concavity);
  if (!r.concavity_method.empty()) os << " (" << r.concavity_method << ")";
  os << "\n";
  if (r.witness) {
    os << "witness q " << format_vector(*r.witness) << " distinguishes "
       << spec.params().id(*r.witness_param) << " (KL " << num(r.witness_kl)
       << ")\n";
  }
  return os.str();
}

json report_json(const GameSpec& spec, const StaticConvergenceReport& r) {
  return {{"report", "static_convergence"},
          {"game", spec.name()},
          {"rule", to_string(r.rule)},
          {"listed", r.listed},
          {"starts", r.starts},
          {"converged", r.converged},
          {"max_steps", r.max_steps},
          {"tol", r.tol},
          {"residuals", r.residuals},
          {"steps", r.steps},
          {"pass", r.pass()}};
}

std::string report_text(const GameSpec& spec, const StaticConvergenceReport& r) {
  std::ostringstream os;
  std::size_t worst = 0;
  for (std::size_t s : r.steps) worst = s > worst ? s : worst;
  os << spec.name() << " / " << to_string(r.rule) << ": " << r.converged << "/"
     << r.starts << " starts below " << num(r.tol) << " (max steps used "
     << worst << " of " << r.max_steps << ")";
  if (!r.listed) os << " [pairing not listed]";
  os << "\n";
  return os.str();
}

json report_json(const GameSpec& spec, const TrajectorySummary& r) {
  json out = {{"report", "trajectory"},
              {"game", spec.name()},
              {"final_belief", belief_json(spec, r.final_belief)},
              {"final_strategy", r.final_strategy},
              {"belief_updates", r.belief_updates},
              {"warnings", r.warnings}};
  out["convergence_stage"] =
      r.convergence_stage ? json(*r.convergence_stage) : json(nullptr);
  if (r.error_kind) {
    out["error"] = {{"kind", to_string(*r.error_kind)}, {"message", r.error}};
  }
  return out;
}

std::string report_text(const GameSpec& spec, const TrajectorySummary& r) {
  std::ostringstream os;
  os << "final belief    " << format_vector(r.final_belief.probabilities())
     << "\n"
     << "final strategy  " << format_vector(r.final_strategy) << "\n"
     << "belief updates  " << r.belief_updates << "\n"
     << "converged       ";
  if (r.convergence_stage) {
    os << "from stage " << *r.convergence_stage << "\n";
  } else {
    os << "not detected\n";
  }
  for (const std::string& w : r.warnings) os << "warning: " << w << "\n";
  if (r.error_kind) os << "error (" << to_string(*r.error_kind) << "): " << r.error << "\n";
  (void)spec;
  return os.str();
}

}  // namespace bgl

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


#include "bgl/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "bgl/error.hpp"
#include "bgl/examples.hpp"

namespace bgl {

namespace {

int line_of(const YAML::Node& node) {
  return node.Mark().line >= 0 ? node.Mark().line + 1 : 0;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// A YAML mapping whose keys are consumed one by one; finish() rejects
// whatever is left.
class Section {
 public:
  Section(const YAML::Node& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) {
      throw ConfigError(path_.empty() ? "<document>" : path_,
                        "expected a mapping", line_of(node_));
    }
  }

  bool has(const std::string& key) const { return bool(node_[key]); }

  std::optional<YAML::Node> get(const std::string& key) {
    seen_.insert(key);
    YAML::Node child = node_[key];
    if (!child || child.IsNull()) return std::nullopt;
    return child;
  }

  YAML::Node require(const std::string& key) {
    auto child = get(key);
    if (!child) {
      throw ConfigError(join(path_, key), "missing mandatory field",
                        line_of(node_));
    }
    return *child;
  }

  void finish() const {
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key)) {
        throw ConfigError(join(path_, key), "unknown field",
                          line_of(kv.first));
      }
    }
  }

  const std::string& path() const { return path_; }
  int line() const { return line_of(node_); }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename T>
T scalar(const YAML::Node& node, const std::string& field, const char* what) {
  if (!node.IsScalar()) throw ConfigError(field, std::string("expected ") + what, line_of(node));
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(field, std::string("expected ") + what, line_of(node));
  }
}

double as_double(const YAML::Node& node, const std::string& field) {
  const double v = scalar<double>(node, field, "a number");
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite", line_of(node));
  return v;
}

std::size_t as_size(const YAML::Node& node, const std::string& field) {
  const std::string text = scalar<std::string>(node, field, "an integer");
  if (!text.empty() && text[0] == '-') {
    throw ConfigError(field, "must be non-negative", line_of(node));
  }
  return scalar<std::size_t>(node, field, "a non-negative integer");
}

std::uint64_t as_u64(const YAML::Node& node, const std::string& field) {
  const std::string text = scalar<std::string>(node, field, "an integer");
  if (!text.empty() && text[0] == '-') {
    throw ConfigError(field, "must be non-negative", line_of(node));
  }
  return scalar<std::uint64_t>(node, field, "a non-negative integer");
}

std::vector<double> as_doubles(const YAML::Node& node,
                               const std::string& field) {
  if (!node.IsSequence()) {
    throw ConfigError(field, "expected a list of numbers", line_of(node));
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < node.size(); ++k) {
    out.push_back(as_double(node[k], field + "[" + std::to_string(k) + "]"));
  }
  return out;
}

// Re-raises a validation error from a constructor with this node's line
// and the enclosing field path.
template <typename F>
auto at_node(const YAML::Node& node, const std::string& field, F&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    if (e.line() > 0) throw;
    const std::string where =
        e.field().rfind(field, 0) == 0 ? e.field() : join(field, e.field());
    throw ConfigError(where, e.message(), line_of(node));
  } catch (const Error& e) {
    throw ConfigError(field, e.what(), line_of(node));
  }
}

Interval parse_interval(const YAML::Node& node, const std::string& field) {
  Section sec(node, field);
  Interval iv{as_double(sec.require("lo"), join(field, "lo")),
              as_double(sec.require("hi"), join(field, "hi"))};
  sec.finish();
  if (!(iv.lo < iv.hi)) {
    throw ConfigError(field, "lo must be strictly below hi", line_of(node));
  }
  return iv;
}

GenericGameConfig parse_generic(const YAML::Node& node,
                                const std::string& field) {
  Section sec(node, field);
  GenericGameConfig g;
  if (auto n = sec.get("name")) g.name = scalar<std::string>(*n, join(field, "name"), "a string");
  const YAML::Node players = sec.require("players");
  if (!players.IsSequence()) {
    throw ConfigError(join(field, "players"), "expected a list", line_of(players));
  }
  for (std::size_t i = 0; i < players.size(); ++i) {
    g.players.push_back(parse_interval(
        players[i], join(field, "players[" + std::to_string(i) + "]")));
  }
  const YAML::Node params = sec.require("params");
  if (!params.IsSequence()) {
    throw ConfigError(join(field, "params"), "expected a list", line_of(params));
  }
  for (std::size_t s = 0; s < params.size(); ++s) {
    const std::string pf = join(field, "params[" + std::to_string(s) + "]");
    Section ps(params[s], pf);
    GenericParamConfig p;
    p.id = scalar<std::string>(ps.require("id"), join(pf, "id"), "a string");
    if (auto c = ps.get("concave")) p.concave = scalar<bool>(*c, join(pf, "concave"), "true or false");
    const YAML::Node payoffs = ps.require("payoffs");
    if (!payoffs.IsSequence()) {
      throw ConfigError(join(pf, "payoffs"), "expected one list per player",
                        line_of(payoffs));
    }
    for (std::size_t i = 0; i < payoffs.size(); ++i) {
      const std::string uf = join(pf, "payoffs[" + std::to_string(i) + "]");
      if (!payoffs[i].IsSequence()) {
        throw ConfigError(uf, "expected a list of monomials", line_of(payoffs[i]));
      }
      std::vector<Monomial> terms;
      for (std::size_t t = 0; t < payoffs[i].size(); ++t) {
        const std::string tf = uf + "[" + std::to_string(t) + "]";
        Section ts(payoffs[i][t], tf);
        Monomial m;
        m.coefficient = as_double(ts.require("coef"), join(tf, "coef"));
        const YAML::Node pw = ts.require("powers");
        if (!pw.IsSequence()) {
          throw ConfigError(join(tf, "powers"), "expected a list", line_of(pw));
        }
        for (std::size_t k = 0; k < pw.size(); ++k) {
          m.powers.push_back(scalar<int>(pw[k], join(tf, "powers"), "an integer"));
        }
        int degree = 0;
        for (int e : m.powers) degree += e;
        if (degree > 4) {
          throw ConfigError(join(tf, "powers"), "total degree exceeds 4", line_of(pw));
        }
        ts.finish();
        terms.push_back(std::move(m));
      }
      p.payoffs.push_back(std::move(terms));
    }
    ps.finish();
    g.params.push_back(std::move(p));
  }
  g.true_param = scalar<std::string>(sec.require("true_param"),
                                     join(field, "true_param"), "a string");
  sec.finish();
  return g;
}

GameConfig parse_game(const YAML::Node& node, const std::string& field) {
  Section sec(node, field);
  GameConfig g;
  if (auto b = sec.get("builtin")) {
    g.builtin = scalar<std::string>(*b, join(field, "builtin"), "a game name");
  }
  if (auto gen = sec.get("generic")) g.generic = parse_generic(*gen, join(field, "generic"));
  if (auto s = sec.get("sigma")) g.sigma = as_double(*s, join(field, "sigma"));
  sec.finish();
  if (g.builtin.has_value() == g.generic.has_value()) {
    throw ConfigError(field, "give exactly one of 'builtin' and 'generic'",
                      line_of(node));
  }
  at_node(node, field, [&] { return g.build(); });
  return g;
}

LearnerConfig parse_learner(const YAML::Node& node, const std::string& field) {
  Section sec(node, field);
  LearnerConfig l;
  if (auto r = sec.get("rule")) {
    const std::string name = scalar<std::string>(*r, join(field, "rule"), "a rule name");
    auto rule = parse_update_rule(name);
    if (!rule) {
      throw ConfigError(join(field, "rule"),
                        "unknown rule '" + name +
                            "' (expected simultaneous_br, sequential_br, "
                            "inertial_br or no_regret)",
                        line_of(*r));
    }
    l.rule = *rule;
  }
  if (auto st = sec.get("step")) {
    const std::string sf = join(field, "step");
    Section ss(*st, sf);
    if (auto k = ss.get("kind")) {
      const std::string name = scalar<std::string>(*k, join(sf, "kind"), "a schedule name");
      auto kind = parse_step_kind(name);
      if (!kind) {
        throw ConfigError(join(sf, "kind"),
                          "unknown step schedule '" + name +
                              "' (expected constant, harmonic or inverse_sqrt)",
                          line_of(*k));
      }
      l.step.kind = *kind;
    }
    if (auto c = ss.get("scale")) l.step.scale = as_double(*c, join(sf, "scale"));
    ss.finish();
  }
  if (auto r = sec.get("regularizer")) {
    l.regularizer = scalar<std::string>(*r, join(field, "regularizer"), "a string");
  }
  if (auto t = sec.get("inner_tol")) l.solver.inner_tol = as_double(*t, join(field, "inner_tol"));
  if (auto m = sec.get("inner_max_iter")) {
    l.solver.inner_max_iter = scalar<int>(*m, join(field, "inner_max_iter"), "an integer");
  }
  sec.finish();
  at_node(node, field, [&] {
    l.validate();
    return 0;
  });
  return l;
}

UpdateSchedule parse_schedule(const YAML::Node& node, const std::string& field) {
  Section sec(node, field);
  UpdateSchedule s;
  if (auto k = sec.get("kind")) {
    const std::string name = scalar<std::string>(*k, join(field, "kind"), "a schedule name");
    auto kind = parse_schedule_kind(name);
    if (!kind) {
      throw ConfigError(join(field, "kind"),
                        "unknown schedule '" + name +
                            "' (expected every_stage, every_n or two_timescale)",
                        line_of(*k));
    }
    s.kind = *kind;
  }
  if (s.kind == UpdateSchedule::Kind::kEveryN) {
    s.every = as_size(sec.require("n"), join(field, "n"));
  }
  if (s.kind == UpdateSchedule::Kind::kTwoTimescale) {
    if (auto g = sec.get("growth")) s.growth = as_double(*g, join(field, "growth"));
  }
  sec.finish();
  at_node(node, field, [&] {
    s.validate();
    return 0;
  });
  return s;
}

InitialValue parse_initial(const YAML::Node& node, const std::string& field) {
  InitialValue v;
  if (node.IsScalar() && node.as<std::string>() == "random") {
    v.random = true;
    return v;
  }
  if (!node.IsSequence()) {
    throw ConfigError(field, "expected a list of numbers or 'random'", line_of(node));
  }
  v.values = as_doubles(node, field);
  return v;
}

// Shortest text that parses back to the same double.
std::string num(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void emit_doubles(YAML::Emitter& out, const std::vector<double>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (double x : v) out << num(x);
  out << YAML::EndSeq;
}

void emit_game(YAML::Emitter& out, const GameConfig& g) {
  out << YAML::Key << "game" << YAML::Value << YAML::BeginMap;
  if (g.builtin) {
    out << YAML::Key << "builtin" << YAML::Value << *g.builtin;
  } else {
    const GenericGameConfig& gen = *g.generic;
    out << YAML::Key << "generic" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << gen.name;
    out << YAML::Key << "players" << YAML::Value << YAML::BeginSeq;
    for (const Interval& iv : gen.players) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "lo" << YAML::Value
          << num(iv.lo) << YAML::Key << "hi" << YAML::Value << num(iv.hi) << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "params" << YAML::Value << YAML::BeginSeq;
    for (const GenericParamConfig& p : gen.params) {
      out << YAML::BeginMap;
      out << YAML::Key << "id" << YAML::Value << p.id;
      out << YAML::Key << "concave" << YAML::Value << p.concave;
      out << YAML::Key << "payoffs" << YAML::Value << YAML::BeginSeq;
      for (const auto& terms : p.payoffs) {
        out << YAML::BeginSeq;
        for (const Monomial& m : terms) {
          out << YAML::Flow << YAML::BeginMap << YAML::Key << "coef"
              << YAML::Value << num(m.coefficient) << YAML::Key << "powers"
              << YAML::Value << YAML::Flow << m.powers << YAML::EndMap;
        }
        out << YAML::EndSeq;
      }
      out << YAML::EndSeq << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "true_param" << YAML::Value << gen.true_param;
    out << YAML::EndMap;
  }
  out << YAML::Key << "sigma" << YAML::Value << num(g.sigma);
  out << YAML::EndMap;
}

void emit_learner(YAML::Emitter& out, const LearnerConfig& l) {
  out << YAML::Key << "learner" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "rule" << YAML::Value << to_string(l.rule);
  out << YAML::Key << "step" << YAML::Value << YAML::Flow << YAML::BeginMap
      << YAML::Key << "kind" << YAML::Value << to_string(l.step.kind)
      << YAML::Key << "scale" << YAML::Value << num(l.step.scale) << YAML::EndMap;
  out << YAML::Key << "regularizer" << YAML::Value << l.regularizer;
  out << YAML::Key << "inner_tol" << YAML::Value << num(l.solver.inner_tol);
  out << YAML::Key << "inner_max_iter" << YAML::Value << l.solver.inner_max_iter;
  out << YAML::EndMap;
}

void emit_schedule(YAML::Emitter& out, const UpdateSchedule& s) {
  out << YAML::Key << "schedule" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << to_string(s.kind);
  if (s.kind == UpdateSchedule::Kind::kEveryN) {
    out << YAML::Key << "n" << YAML::Value << s.every;
  }
  if (s.kind == UpdateSchedule::Kind::kTwoTimescale) {
    out << YAML::Key << "growth" << YAML::Value << num(s.growth);
  }
  out << YAML::EndMap;
}

YAML::Node parse_document(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("<document>", e.msg, e.mark.line + 1);
  }
}

}  // namespace

GameSpec GameConfig::build() const {
  if (builtin) return builtin_game(*builtin, sigma);
  if (!generic) throw ConfigError("game", "no game given");
  const GenericGameConfig& g = *generic;
  std::vector<std::string> ids;
  std::vector<std::vector<Polynomial>> payoffs;
  std::vector<bool> concave;
  for (const GenericParamConfig& p : g.params) {
    ids.push_back(p.id);
    std::vector<Polynomial> per_player;
    for (const auto& terms : p.payoffs) per_player.emplace_back(terms);
    payoffs.push_back(std::move(per_player));
    concave.push_back(p.concave);
  }
  std::size_t star = ids.size();
  for (std::size_t s = 0; s < ids.size(); ++s) {
    if (ids[s] == g.true_param) star = s;
  }
  if (star == ids.size()) {
    throw ConfigError("generic.true_param", "'" + g.true_param + "' is not a parameter id");
  }
  return GameSpec(g.name, g.players, ParameterSet(ids, star),
                  make_polynomial_payoff(g.players.size(), std::move(payoffs),
                                         std::move(concave)),
                  sigma);
}

RunConfig parse_config(const std::string& text) {
  const YAML::Node root = parse_document(text);
  Section sec(root, "");
  RunConfig c;
  const YAML::Node game = sec.require("game");
  c.game = parse_game(game, "game");
  const GameSpec spec = c.game.build();
  if (auto l = sec.get("learner")) c.learner = parse_learner(*l, "learner");
  if (auto s = sec.get("schedule")) c.schedule = parse_schedule(*s, "schedule");
  if (auto z = sec.get("allow_zero_support")) {
    c.allow_zero_support = scalar<bool>(*z, "allow_zero_support", "true or false");
  }

  const YAML::Node theta = sec.require("init_theta");
  c.init_theta = parse_initial(theta, "init_theta");
  if (!c.init_theta.random) {
    if (c.init_theta.values.size() != spec.num_params()) {
      throw ConfigError("init_theta",
                        "expected " + std::to_string(spec.num_params()) + " entries",
                        line_of(theta));
    }
    const Belief b = at_node(theta, "init_theta", [&] {
      return Belief::from_probabilities(c.init_theta.values);
    });
    if (!c.allow_zero_support && b.support().size() != b.size()) {
      throw ConfigError("init_theta",
                        "every parameter needs positive initial probability "
                        "(set allow_zero_support to override)",
                        line_of(theta));
    }
  }
  const YAML::Node q = sec.require("init_q");
  c.init_q = parse_initial(q, "init_q");
  if (!c.init_q.random) {
    at_node(q, "init_q", [&] {
      spec.check_feasible(c.init_q.values);
      return 0;
    });
  }
  const YAML::Node horizon = sec.require("horizon");
  c.horizon = as_size(horizon, "horizon");
  if (c.horizon < 1) throw ConfigError("horizon", "must be >= 1", line_of(horizon));
  c.seed = as_u64(sec.require("seed"), "seed");

  if (auto o = sec.get("output")) {
    Section os(*o, "output");
    if (auto t = os.get("trajectory")) c.output.trajectory = scalar<std::string>(*t, "output.trajectory", "a path");
    if (auto s = os.get("summary")) c.output.summary = scalar<std::string>(*s, "output.summary", "a path");
    if (auto r = os.get("record_every")) {
      c.output.record_every = as_size(*r, "output.record_every");
      if (c.output.record_every < 1) {
        throw ConfigError("output.record_every", "must be >= 1", line_of(*r));
      }
    }
    os.finish();
  }
  if (auto t = sec.get("tolerances")) {
    Section ts(*t, "tolerances");
    if (auto v = ts.get("kl")) c.tolerances.kl = as_double(*v, "tolerances.kl");
    if (auto v = ts.get("br")) c.tolerances.br = as_double(*v, "tolerances.br");
    if (auto v = ts.get("convergence_window")) {
      c.tolerances.convergence_window = as_size(*v, "tolerances.convergence_window");
    }
    if (auto v = ts.get("convergence_tol")) {
      c.tolerances.convergence_tol = as_double(*v, "tolerances.convergence_tol");
    }
    ts.finish();
    if (!(c.tolerances.kl > 0.0) || !(c.tolerances.br > 0.0) ||
        !(c.tolerances.convergence_tol > 0.0)) {
      throw ConfigError("tolerances", "tolerances must be > 0", ts.line());
    }
  }
  sec.finish();
  return c;
}

RunConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

std::string dump_config(const RunConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  emit_game(out, c.game);
  emit_learner(out, c.learner);
  emit_schedule(out, c.schedule);
  out << YAML::Key << "init_theta" << YAML::Value;
  if (c.init_theta.random) out << "random"; else emit_doubles(out, c.init_theta.values);
  out << YAML::Key << "init_q" << YAML::Value;
  if (c.init_q.random) out << "random"; else emit_doubles(out, c.init_q.values);
  if (c.allow_zero_support) {
    out << YAML::Key << "allow_zero_support" << YAML::Value << true;
  }
  out << YAML::Key << "horizon" << YAML::Value << c.horizon;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  if (!c.output.trajectory.empty()) {
    out << YAML::Key << "trajectory" << YAML::Value << c.output.trajectory;
  }
  if (!c.output.summary.empty()) {
    out << YAML::Key << "summary" << YAML::Value << c.output.summary;
  }
  out << YAML::Key << "record_every" << YAML::Value << c.output.record_every;
  out << YAML::EndMap;
  out << YAML::Key << "tolerances" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kl" << YAML::Value << num(c.tolerances.kl);
  out << YAML::Key << "br" << YAML::Value << num(c.tolerances.br);
  out << YAML::Key << "convergence_window" << YAML::Value << c.tolerances.convergence_window;
  out << YAML::Key << "convergence_tol" << YAML::Value << num(c.tolerances.convergence_tol);
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

void save_config(const RunConfig& config, const std::string& path) {
  write_file(path, dump_config(config));
}

InitialState initial_state(const RunConfig& config, const GameSpec& spec) {
  RandomStream rng(config.seed, 0x696e6974);
  InitialState st;
  if (config.init_theta.random) {
    std::vector<double> p(spec.num_params());
    double sum = 0.0;
    for (double& x : p) {
      double u = rng.uniform();
      while (u <= 0.0) u = rng.uniform();
      x = -std::log(u);
      sum += x;
    }
    for (double& x : p) x /= sum;
    st.theta = Belief::from_probabilities(p);
  } else {
    st.theta = Belief::from_probabilities(config.init_theta.values);
  }
  if (config.init_q.random) {
    st.q.resize(spec.num_players());
    for (std::size_t i = 0; i < st.q.size(); ++i) {
      st.q[i] = rng.uniform(spec.strategy_set(i).lo, spec.strategy_set(i).hi);
    }
  } else {
    st.q = config.init_q.values;
  }
  return st;
}

Trajectory run_config(const RunConfig& config, const GameSpec& spec) {
  const InitialState init = initial_state(config, spec);
  RunOptions opts;
  opts.horizon = config.horizon;
  opts.seed = config.seed;
  opts.allow_zero_support = config.allow_zero_support;
  opts.convergence_window = config.tolerances.convergence_window;
  opts.convergence_tol = config.tolerances.convergence_tol;
  return run(spec, config.learner, config.schedule, init.theta, init.q, opts);
}

RunConfig fixture_config(const std::string& name, double sigma) {
  const ExampleFixture fx = build_fixture(name, sigma, "name");
  RunConfig c;
  c.game.builtin = name;
  c.game.sigma = sigma;
  c.init_theta.values = Belief::uniform(fx.spec.num_params()).probabilities();
  for (const Interval& iv : fx.spec.strategy_sets()) {
    c.init_q.values.push_back(0.5 * (iv.lo + iv.hi));
  }
  c.horizon = 5000;
  c.seed = 0;
  return c;
}

StabilityManifest parse_manifest(const std::string& text) {
  const YAML::Node root = parse_document(text);
  Section sec(root, "");
  StabilityManifest m;
  m.game = parse_game(sec.require("game"), "game");
  const GameSpec spec = m.game.build();
  if (auto l = sec.get("learner")) m.learner = parse_learner(*l, "learner");
  if (auto s = sec.get("schedule")) m.schedule = parse_schedule(*s, "schedule");
  const YAML::Node tb = sec.require("theta_bar");
  m.theta_bar = as_doubles(tb, "theta_bar");
  if (m.theta_bar.size() != spec.num_params()) {
    throw ConfigError("theta_bar", "expected " + std::to_string(spec.num_params()) + " entries",
                      line_of(tb));
  }
  at_node(tb, "theta_bar", [&] { return Belief::from_probabilities(m.theta_bar); });
  if (auto eq = sec.get("eq_set")) {
    if (!eq->IsSequence()) throw ConfigError("eq_set", "expected a list of profiles", line_of(*eq));
    for (std::size_t k = 0; k < eq->size(); ++k) {
      const std::string f = "eq_set[" + std::to_string(k) + "]";
      StrategyProfile q = as_doubles((*eq)[k], f);
      at_node((*eq)[k], f, [&] {
        spec.check_feasible(q);
        return 0;
      });
      m.eq_set.push_back(std::move(q));
    }
  }
  if (auto g = sec.get("grid")) {
    Section gs(*g, "grid");
    auto list = [&](const char* key, std::vector<double>& dst) {
      if (auto v = gs.get(key)) {
        const std::string f = join("grid", key);
        dst = v->IsSequence() ? as_doubles(*v, f) : std::vector<double>{as_double(*v, f)};
        if (dst.empty()) throw ConfigError(f, "must not be empty", line_of(*v));
      }
    };
    list("gamma", m.gamma);
    list("eps_bar", m.eps_bar);
    list("eps_x", m.eps_x);
    list("delta1", m.delta1);
    if (auto v = gs.get("eps1")) {
      m.eps1.clear();
      auto one = [&](const YAML::Node& n, const std::string& f) {
        if (n.IsScalar() && n.as<std::string>() == "thresholds") {
          m.eps1.push_back(std::nullopt);
        } else {
          m.eps1.push_back(as_double(n, f));
        }
      };
      if (v->IsSequence()) {
        for (std::size_t k = 0; k < v->size(); ++k) {
          one((*v)[k], "grid.eps1[" + std::to_string(k) + "]");
        }
      } else {
        one(*v, "grid.eps1");
      }
      if (m.eps1.empty()) throw ConfigError("grid.eps1", "must not be empty", line_of(*v));
    }
    gs.finish();
  }
  if (auto v = sec.get("n_runs")) m.n_runs = as_size(*v, "n_runs");
  if (auto v = sec.get("horizon")) m.horizon = as_size(*v, "horizon");
  m.seed = as_u64(sec.require("seed"), "seed");
  if (auto e = sec.get("escape")) {
    Section es(*e, "escape");
    m.escape_theta = as_doubles(es.require("theta"), "escape.theta");
    m.escape_q = as_doubles(es.require("q"), "escape.q");
    if (auto r = es.get("radius")) m.escape_radius = as_double(*r, "escape.radius");
    es.finish();
  }
  sec.finish();
  return m;
}

StabilityManifest load_manifest(const std::string& path) {
  return parse_manifest(read_file(path));
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_trajectory(std::ostream& out, const GameSpec& spec,
                      const Trajectory& traj, std::size_t record_every) {
  if (record_every < 1) throw ConfigError("record_every", "must be >= 1");
  out << "# k";
  for (const std::string& id : spec.params().ids()) out << ",theta_" << id;
  for (std::size_t i = 0; i < spec.num_players(); ++i) out << ",q_" << i;
  if (!traj.records.empty()) {
    const Observation& obs = traj.records.front().obs;
    for (std::size_t c = 0; c < obs.context.size(); ++c) out << ",context_" << c;
    for (std::size_t c = 0; c < obs.statistic.size(); ++c) out << ",statistic_" << c;
  }
  out << '\n';
  const std::size_t n = traj.records.size();
  for (std::size_t r = 0; r < n; ++r) {
    if (r % record_every != 0 && r + 1 != n) continue;
    const StageRecord& rec = traj.records[r];
    out << rec.k;
    for (double p : rec.theta.probabilities()) out << ',' << format_double(p);
    for (double x : rec.q) out << ',' << format_double(x);
    for (double x : rec.obs.context) out << ',' << format_double(x);
    for (double x : rec.obs.statistic) out << ',' << format_double(x);
    out << '\n';
  }
  if (!out) fail(ErrorKind::kIo, "failed writing trajectory");
}

void write_trajectory_file(const std::string& path, const GameSpec& spec,
                           const Trajectory& traj, std::size_t record_every) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  write_trajectory(out, spec, traj, record_every);
}

TrajectoryTable read_trajectory(std::istream& in) {
  TrajectoryTable table;
  std::string line;
  std::size_t line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      while (!body.empty() && body.front() == ' ') body.erase(body.begin());
      table.columns = split(body);
      continue;
    }
    std::vector<double> row;
    for (const std::string& cell : split(line)) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        fail(ErrorKind::kIo, "trajectory line " + std::to_string(line_no) +
                                 ": cannot parse '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!table.columns.empty() && row.size() != table.columns.size()) {
      fail(ErrorKind::kIo, "trajectory line " + std::to_string(line_no) +
                               ": expected " + std::to_string(table.columns.size()) +
                               " columns");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) fail(ErrorKind::kIo, "failed writing '" + path + "'");
}

}  // namespace bgl

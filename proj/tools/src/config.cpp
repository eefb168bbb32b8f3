#include "mcs/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "mcs/errors.hpp"

namespace mcs::cli {

using nlohmann::json;

namespace {

// Reads typed fields out of one JSON object, remembering which keys were
// consumed so leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  template <typename Fn>
  void with(const std::string& key, Fn&& fn) {
    seen_.insert(key);
    auto it = node_.find(key);
    if (it != node_.end()) fn(*it, field(key));
  }

  void number(const std::string& key, double& out) {
    with(key, [&](const json& v, const std::string& f) {
      if (!v.is_number()) throw ConfigError(f + ": expected a number");
      out = v.get<double>();
    });
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) {
    with(key, [&](const json& v, const std::string& f) {
      if (!v.is_number_integer()) throw ConfigError(f + ": expected an integer");
      if constexpr (std::is_unsigned_v<Int>) {
        if (v.is_number_unsigned()) {
          out = static_cast<Int>(v.get<std::uint64_t>());
        } else {
          const auto s = v.get<std::int64_t>();
          if (s < 0) throw ConfigError(f + ": expected a non-negative integer");
          out = static_cast<Int>(s);
        }
      } else {
        out = static_cast<Int>(v.get<std::int64_t>());
      }
    });
  }

  void boolean(const std::string& key, bool& out) {
    with(key, [&](const json& v, const std::string& f) {
      if (v.is_boolean()) {
        out = v.get<bool>();
      } else if (v.is_string() && (v == "on" || v == "off")) {
        out = v == "on";
      } else {
        throw ConfigError(f + ": expected true/false or \"on\"/\"off\"");
      }
    });
  }

  void string(const std::string& key, std::string& out) {
    with(key, [&](const json& v, const std::string& f) {
      if (!v.is_string()) throw ConfigError(f + ": expected a string");
      out = v.get<std::string>();
    });
  }

  void range(const std::string& key, Range& out) {
    with(key, [&](const json& v, const std::string& f) {
      if (v.is_number()) {
        out.lo = out.hi = v.get<double>();
      } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        out.lo = v[0].get<double>();
        out.hi = v[1].get<double>();
      } else {
        throw ConfigError(f + ": expected a number or a [lo, hi] pair");
      }
      if (!(out.lo <= out.hi)) throw ConfigError(f + ": lo must not exceed hi");
    });
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    with(key, [&](const json& v, const std::string& f) {
      if (!v.is_array()) throw ConfigError(f + ": expected a list of numbers");
      out.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw ConfigError(f + "[" + std::to_string(i) + "]: expected a number");
        out.push_back(v[i].get<double>());
      }
    });
  }

  void sizes(const std::string& key, std::vector<std::size_t>& out) {
    with(key, [&](const json& v, const std::string& f) {
      if (!v.is_array()) throw ConfigError(f + ": expected a list of integers");
      out.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_unsigned()) {
          throw ConfigError(f + "[" + std::to_string(i) + "]: expected a positive integer");
        }
        out.push_back(v[i].get<std::size_t>());
      }
    });
  }

  void require(const std::string& key) const {
    if (!has(key)) throw ConfigError(field(key) + ": required field is missing");
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ConfigError(field(key) + ": unknown field");
    }
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_demand(const json& node, const std::string& path, DemandSpec& out) {
  Reader r(node, path);
  r.string("kind", out.kind);
  r.number("lo", out.lo);
  r.number("hi", out.hi);
  r.number("rate", out.rate);
  r.finish();
}

void read_scenario(const json& node, const std::string& path, GenerationSpec& out, bool require_lambda) {
  Reader r(node, path);
  if (require_lambda) r.require("lambda");
  r.number("lambda", out.lambda);
  r.integer("num_mus", out.num_mus);
  r.number("tau", out.tau);
  r.with("demand", [&](const json& v, const std::string& f) { read_demand(v, f, out.demand); });
  r.range("cost", out.cost);
  r.range("delta", out.delta);
  r.with("seed", [&](const json& v, const std::string& f) {
    if (!v.is_number_unsigned()) throw ConfigError(f + ": expected a non-negative integer");
    out.seed = v.get<std::uint64_t>();
  });
  r.with("mus", [&](const json& v, const std::string& f) {
    if (!v.is_array()) throw ConfigError(f + ": expected a list of MU objects");
    out.mus.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string item = f + "[" + std::to_string(i) + "]";
      MuSpec mu;
      mu.tau = out.tau;
      mu.demand = out.demand;
      Reader m(v[i], item);
      m.require("delta");
      m.require("cost");
      m.number("tau", mu.tau);
      m.number("delta", mu.delta);
      m.number("cost", mu.cost);
      m.with("demand", [&](const json& d, const std::string& df) { read_demand(d, df, mu.demand); });
      m.finish();
      out.mus.push_back(mu);
    }
  });
  r.finish();
}

json demand_json(const DemandSpec& d) {
  json j{{"kind", d.kind}, {"lo", d.lo}, {"hi", d.hi}};
  if (d.kind != "uniform") j["rate"] = d.rate;
  return j;
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

json parse_config_text(const std::string& text, const std::string& origin) {
  try {
    json doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");
    return doc;
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    const auto colon = what.find("syntax error");
    throw ConfigError(origin + ": " + line_col(text, e.byte) + ": " +
                      (colon == std::string::npos ? what : what.substr(colon)));
  }
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "': expected key.path=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("override '" + assignment + "': empty key segment");
    if (!node->is_object()) throw ConfigError("override '" + assignment + "': '" + part + "' is not inside an object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

RunConfig build_config(const json& doc, bool require_scenario) {
  RunConfig c;
  Reader top(doc, "");
  top.integer("seed", c.seed);
  if (require_scenario) top.require("scenario");
  top.with("scenario", [&](const json& v, const std::string& f) {
    read_scenario(v, f, c.scenario, require_scenario);
  });
  top.with("solver", [&](const json& v, const std::string& f) {
    Reader r(v, f);
    r.number("tol", c.solver.tol);
    r.integer("max_iters", c.solver.max_iters);
    r.integer("n_starts", c.solver.n_starts);
    r.number("initial_step", c.solver.initial_step);
    r.number("shrink", c.solver.shrink);
    r.number("armijo", c.solver.armijo);
    r.integer("max_backtracks", c.solver.max_backtracks);
    r.boolean("diagonal_scaling", c.solver.diagonal_scaling);
    r.finish();
  });
  top.with("env", [&](const json& v, const std::string& f) {
    Reader r(v, f);
    r.integer("history_length", c.env.history_length);
    r.number("reward_scale", c.env.reward_scale);
    r.number("p_max", c.env.p_max);
    r.finish();
  });
  top.with("train", [&](const json& v, const std::string& f) {
    Reader r(v, f);
    r.number("gamma", c.train.gamma);
    r.number("epsilon", c.train.epsilon);
    r.integer("steps_per_episode", c.train.steps_per_episode);
    r.integer("epochs", c.train.epochs);
    r.number("actor_lr", c.train.actor_lr);
    r.number("critic_lr", c.train.critic_lr);
    r.integer("episodes", c.train.episodes);
    r.sizes("hidden", c.train.hidden);
    r.number("log_std_init", c.train.log_std_init);
    r.finish();
  });
  top.with("baselines", [&](const json& v, const std::string& f) {
    Reader r(v, f);
    r.integer("random_episodes", c.baselines.random_episodes);
    r.integer("tail_episodes", c.baselines.tail_episodes);
    r.finish();
  });
  top.with("sweep", [&](const json& v, const std::string& f) {
    Reader r(v, f);
    r.require("axis");
    r.require("values");
    r.string("axis", c.sweep.axis);
    r.numbers("values", c.sweep.values);
    r.string("method", c.sweep.method);
    r.finish();
  });
  top.with("output", [&](const json& v, const std::string& f) {
    Reader r(v, f);
    r.boolean("svg", c.output.svg);
    r.boolean("steps_trace", c.output.steps_trace);
    r.finish();
  });
  top.with("gradcheck", [&](const json& v, const std::string& f) {
    Reader r(v, f);
    r.integer("probes", c.gradcheck.probes);
    r.string("corrupt", c.gradcheck.corrupt);
    r.finish();
  });
  top.finish();

  c.train.seed = c.seed;
  c.env.episode_length = c.train.steps_per_episode;
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  const GenerationSpec& s = c.scenario;
  if (!(s.lambda > 0.0)) throw ConfigError("scenario.lambda: must be positive");
  if (s.mus.empty()) {
    if (s.num_mus < 1) throw ConfigError("scenario.num_mus: must be at least 1");
    if (!(s.tau > 0.0)) throw ConfigError("scenario.tau: must be positive");
    if (!(s.cost.lo >= 0.0)) throw ConfigError("scenario.cost: must be non-negative");
  }
  auto check_demand = [](const DemandSpec& d, const std::string& f) {
    if (d.kind != "uniform" && d.kind != "truncated_exponential") {
      throw ConfigError(f + ".kind: unknown demand family '" + d.kind + "'");
    }
    if (!(d.lo >= 0.0 && d.lo < d.hi)) throw ConfigError(f + ": need 0 <= lo < hi");
    if (d.kind == "truncated_exponential" && !(d.rate > 0.0)) throw ConfigError(f + ".rate: must be positive");
  };
  check_demand(s.demand, "scenario.demand");
  for (std::size_t i = 0; i < s.mus.size(); ++i) {
    check_demand(s.mus[i].demand, "scenario.mus[" + std::to_string(i) + "].demand");
  }

  validate(c.solver);
  validate(c.env);
  rl::validate(c.train);
  if (c.baselines.random_episodes < 1) throw ConfigError("baselines.random_episodes: must be at least 1");
  if (c.baselines.tail_episodes < 1) throw ConfigError("baselines.tail_episodes: must be at least 1");
  if (!c.sweep.axis.empty()) {
    const auto& axes = sweep_axes();
    if (std::find(axes.begin(), axes.end(), c.sweep.axis) == axes.end()) {
      throw ConfigError("sweep.axis: unknown axis '" + c.sweep.axis + "' (expected delta, cost, demand_upper or lambda)");
    }
  }
  if (c.sweep.method != "static" && c.sweep.method != "trained") {
    throw ConfigError("sweep.method: expected 'static' or 'trained', got '" + c.sweep.method + "'");
  }
  if (c.gradcheck.probes < 1) throw ConfigError("gradcheck.probes: must be at least 1");
}

json to_json(const RunConfig& c) {
  json scenario{{"lambda", c.scenario.lambda},
                {"num_mus", c.scenario.num_mus},
                {"tau", c.scenario.tau},
                {"demand", demand_json(c.scenario.demand)},
                {"cost", json::array({c.scenario.cost.lo, c.scenario.cost.hi})},
                {"delta", json::array({c.scenario.delta.lo, c.scenario.delta.hi})},
                {"seed", c.scenario.seed.value_or(c.seed)}};
  if (!c.scenario.mus.empty()) {
    json mus = json::array();
    for (const MuSpec& m : c.scenario.mus) {
      mus.push_back({{"tau", m.tau}, {"delta", m.delta}, {"cost", m.cost}, {"demand", demand_json(m.demand)}});
    }
    scenario["mus"] = mus;
  }
  return json{
      {"seed", c.seed},
      {"scenario", scenario},
      {"solver",
       {{"tol", c.solver.tol},
        {"max_iters", c.solver.max_iters},
        {"n_starts", c.solver.n_starts},
        {"initial_step", c.solver.initial_step},
        {"shrink", c.solver.shrink},
        {"armijo", c.solver.armijo},
        {"max_backtracks", c.solver.max_backtracks},
        {"diagonal_scaling", c.solver.diagonal_scaling}}},
      {"env",
       {{"history_length", c.env.history_length},
        {"reward_scale", c.env.reward_scale},
        {"p_max", c.env.p_max}}},
      {"train",
       {{"gamma", c.train.gamma},
        {"epsilon", c.train.epsilon},
        {"steps_per_episode", c.train.steps_per_episode},
        {"epochs", c.train.epochs},
        {"actor_lr", c.train.actor_lr},
        {"critic_lr", c.train.critic_lr},
        {"episodes", c.train.episodes},
        {"hidden", c.train.hidden},
        {"log_std_init", c.train.log_std_init}}},
      {"baselines",
       {{"random_episodes", c.baselines.random_episodes}, {"tail_episodes", c.baselines.tail_episodes}}},
      {"sweep", {{"axis", c.sweep.axis}, {"values", c.sweep.values}, {"method", c.sweep.method}}},
      {"output", {{"svg", c.output.svg}, {"steps_trace", c.output.steps_trace}}},
      {"gradcheck", {{"probes", c.gradcheck.probes}, {"corrupt", c.gradcheck.corrupt}}},
  };
}

}  // namespace mcs::cli

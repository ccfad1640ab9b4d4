#include "saea/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "saea/error.hpp"
#include "saea/harness/expr.hpp"
#include "saea/harness/stats.hpp"

namespace saea::harness {
namespace {

struct ParamDefault {
  const char* name;
  const char* value;
};

// Defaults follow the parameter settings of the runtime comparison.
std::vector<ParamDefault> defaults_for(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::SelfAdaptive:
      return {{"lambda", "16*ln(n)"}, {"mu", "lambda/8"}, {"A", "1.2"},       {"b", "0.7"},
              {"p_inc", "0.25"},      {"epsilon", "1/(2*n)"}, {"chi_init", "1"}};
    case AlgorithmKind::OnePlusOne:
      return {{"rate", "1/n"}};
    case AlgorithmKind::OnePlusOneAlpha:
      return {{"A", "1.2"},        {"b", "0.85"},          {"epsilon", "1/(2*n)"},
              {"chi_init", "1"},   {"success", "not_worse"}};
    case AlgorithmKind::MuLambdaStatic:
      return {{"lambda", "16*ln(n)"}, {"mu", "2*ln(n)"}, {"rate", "2/(5*n)"}};
  }
  return {};
}

std::string scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError("'" + key + "' must be a scalar");
  return node.Scalar();
}

std::uint64_t unsigned_value(const YAML::Node& node, const std::string& key) {
  const double v = evaluate_expression(scalar(node, key), {});
  if (!(v >= 0.0) || v > 1.8e19) throw ConfigError("'" + key + "' must be a non-negative integer");
  return static_cast<std::uint64_t>(std::llround(v));
}

bool bool_value(const YAML::Node& node, const std::string& key) {
  const std::string s = scalar(node, key);
  if (s == "true" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "no" || s == "off") return false;
  throw ConfigError("'" + key + "' must be true or false");
}

Spacing parse_spacing(std::string_view token) {
  if (token == "geometric") return Spacing::Geometric;
  if (token == "linear") return Spacing::Linear;
  throw ConfigError("unknown k spacing '" + std::string(token) + "'");
}

std::string_view to_token(Spacing s) { return s == Spacing::Geometric ? "geometric" : "linear"; }

double eval_param(const AlgorithmSpec& spec, const std::string& name, const Variables& vars) {
  auto it = spec.params.find(name);
  std::string text;
  if (it != spec.params.end()) {
    text = it->second;
  } else {
    for (const auto& d : defaults_for(spec.kind)) {
      if (name == d.name) text = d.value;
    }
  }
  const double v = evaluate_expression(text, vars);
  if (!std::isfinite(v)) {
    throw ConfigError(std::string(to_token(spec.kind)) + "." + name + " is not finite");
  }
  return v;
}

std::size_t rounded_size(double v, const std::string& what) {
  const double r = std::nearbyint(v);
  if (!(r >= 1.0)) throw ConfigError(what + " must be at least 1 after rounding (got " +
                                     std::to_string(v) + ")");
  return static_cast<std::size_t>(r);
}

}  // namespace

std::string_view to_token(Normalization mode) noexcept {
  switch (mode) {
    case Normalization::None: return "none";
    case Normalization::KSquared: return "k_squared";
    case Normalization::NK: return "n_k";
    case Normalization::KLogK: return "k_log_k";
  }
  return "none";
}

Normalization parse_normalization(std::string_view token) {
  for (auto m : {Normalization::None, Normalization::KSquared, Normalization::NK, Normalization::KLogK}) {
    if (to_token(m) == token) return m;
  }
  throw ConfigError("unknown normalization '" + std::string(token) + "'");
}

ExperimentConfig parse_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config must be a mapping");

  static const std::set<std::string> known = {"function", "n",             "k",     "trials",
                                              "budget",   "base_seed",     "normalization",
                                              "trace",    "overlay",       "algorithms"};
  ExperimentConfig cfg;
  bool have_function = false;
  bool have_n = false;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    const YAML::Node& v = kv.second;
    if (key == "function") {
      cfg.function = parse_function_kind(scalar(v, key));
      have_function = true;
    } else if (key == "n") {
      cfg.n = static_cast<std::size_t>(unsigned_value(v, key));
      have_n = true;
    } else if (key == "k") {
      if (v.IsSequence()) {
        for (const auto& e : v) cfg.k.push_back(scalar(e, key));
      } else if (v.IsMap()) {
        KGrid g;
        for (const auto& gkv : v) {
          const auto gk = gkv.first.as<std::string>();
          if (gk == "from") {
            g.from = scalar(gkv.second, gk);
          } else if (gk == "to") {
            g.to = scalar(gkv.second, gk);
          } else if (gk == "count") {
            g.count = static_cast<std::size_t>(unsigned_value(gkv.second, gk));
          } else if (gk == "spacing") {
            g.spacing = parse_spacing(scalar(gkv.second, gk));
          } else {
            throw ConfigError("unknown k grid key '" + gk + "'");
          }
        }
        if (g.from.empty() || g.to.empty()) throw ConfigError("k grid needs 'from' and 'to'");
        cfg.k_grid = g;
      } else {
        cfg.k.push_back(scalar(v, key));
      }
    } else if (key == "trials") {
      cfg.trials = static_cast<std::size_t>(unsigned_value(v, key));
    } else if (key == "budget") {
      cfg.budget = unsigned_value(v, key);
    } else if (key == "base_seed") {
      cfg.base_seed = unsigned_value(v, key);
    } else if (key == "normalization") {
      cfg.normalization = parse_normalization(scalar(v, key));
    } else if (key == "trace") {
      cfg.trace = bool_value(v, key);
    } else if (key == "overlay") {
      cfg.overlay = scalar(v, key);
    } else if (key == "algorithms") {
      if (!v.IsMap()) throw ConfigError("'algorithms' must map algorithm names to parameters");
      for (const auto& akv : v) {
        AlgorithmSpec spec;
        spec.kind = parse_algorithm_kind(akv.first.as<std::string>());
        const auto allowed = defaults_for(spec.kind);
        if (akv.second.IsMap()) {
          for (const auto& pkv : akv.second) {
            const auto pname = pkv.first.as<std::string>();
            const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                        [&](const ParamDefault& d) { return pname == d.name; });
            if (!ok) {
              throw ConfigError("unknown parameter '" + pname + "' for " +
                                std::string(to_token(spec.kind)));
            }
            spec.params[pname] = scalar(pkv.second, pname);
          }
        } else if (!akv.second.IsNull()) {
          throw ConfigError("parameters of an algorithm must be a mapping");
        }
        cfg.algorithms.push_back(std::move(spec));
      }
    }
  }
  if (!have_function) throw ConfigError("config needs 'function'");
  if (!have_n) throw ConfigError("config needs 'n'");
  if (cfg.algorithms.empty()) throw ConfigError("config needs at least one algorithm");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_yaml(const ExperimentConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "function" << YAML::Value << std::string(to_token(cfg.function));
  out << YAML::Key << "n" << YAML::Value << cfg.n;
  if (cfg.k_grid) {
    out << YAML::Key << "k" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "from" << YAML::Value << cfg.k_grid->from;
    out << YAML::Key << "to" << YAML::Value << cfg.k_grid->to;
    out << YAML::Key << "count" << YAML::Value << cfg.k_grid->count;
    out << YAML::Key << "spacing" << YAML::Value << std::string(to_token(cfg.k_grid->spacing));
    out << YAML::EndMap;
  } else if (!cfg.k.empty()) {
    out << YAML::Key << "k" << YAML::Value << YAML::Flow << cfg.k;
  }
  out << YAML::Key << "trials" << YAML::Value << cfg.trials;
  out << YAML::Key << "budget" << YAML::Value << cfg.budget;
  out << YAML::Key << "base_seed" << YAML::Value << cfg.base_seed;
  out << YAML::Key << "normalization" << YAML::Value << std::string(to_token(cfg.normalization));
  out << YAML::Key << "trace" << YAML::Value << cfg.trace;
  out << YAML::Key << "overlay" << YAML::Value << cfg.overlay;
  out << YAML::Key << "algorithms" << YAML::Value << YAML::BeginMap;
  for (const auto& a : cfg.algorithms) {
    out << YAML::Key << std::string(to_token(a.kind)) << YAML::Value << YAML::Flow << YAML::BeginMap;
    for (const auto& [name, value] : a.params) out << YAML::Key << name << YAML::Value << value;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::vector<std::size_t> resolve_k(const ExperimentConfig& cfg) {
  if (cfg.function == FunctionKind::LeadingOnes || cfg.function == FunctionKind::OneMax) {
    return {cfg.n};
  }
  const Variables vars{{"n", static_cast<double>(cfg.n)}};
  std::vector<double> raw;
  if (cfg.k_grid) {
    const double from = evaluate_expression(cfg.k_grid->from, vars);
    const double to = evaluate_expression(cfg.k_grid->to, vars);
    const std::size_t count = cfg.k_grid->count;
    if (count < 1) throw ConfigError("k grid count must be at least 1");
    if (!(from > 0.0 && to >= from)) throw ConfigError("k grid needs 0 < from <= to");
    for (std::size_t i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      raw.push_back(cfg.k_grid->spacing == Spacing::Geometric ? from * std::pow(to / from, t)
                                                              : from + (to - from) * t);
    }
  } else {
    for (const auto& e : cfg.k) raw.push_back(evaluate_expression(e, vars));
  }
  if (raw.empty()) throw ConfigError("config needs at least one k value for " +
                                     std::string(to_token(cfg.function)));
  std::vector<std::size_t> ks;
  for (double v : raw) {
    const std::size_t k = rounded_size(v, "k");
    const std::size_t k_max = cfg.function == FunctionKind::JumpK ? cfg.n - 1 : cfg.n;
    if (k > k_max) {
      throw ConfigError("k=" + std::to_string(k) + " out of range for " +
                        std::string(to_token(cfg.function)) + " with n=" + std::to_string(cfg.n));
    }
    if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
  }
  return ks;
}

ResolvedAlgorithm resolve_algorithm(const AlgorithmSpec& spec, std::size_t n, std::size_t k) {
  Variables vars{{"n", static_cast<double>(n)}, {"k", static_cast<double>(k)}};
  ResolvedAlgorithm r;
  r.kind = spec.kind;
  const std::string name(to_token(spec.kind));
  try {
    switch (spec.kind) {
      case AlgorithmKind::SelfAdaptive:
      case AlgorithmKind::MuLambdaStatic: {
        r.lambda = rounded_size(eval_param(spec, "lambda", vars), name + ".lambda");
        vars["lambda"] = static_cast<double>(r.lambda);
        r.mu = rounded_size(eval_param(spec, "mu", vars), name + ".mu");
        if (r.mu > r.lambda) throw ConfigError(name + ": mu exceeds lambda");
        if (spec.kind == AlgorithmKind::MuLambdaStatic) {
          r.rate = eval_param(spec, "rate", vars);
          if (!(r.rate > 0.0 && r.rate <= 0.5)) throw ConfigError(name + ".rate outside (0, 1/2]");
        } else {
          r.sa.lambda = r.lambda;
          r.sa.mu = r.mu;
          r.sa.A = eval_param(spec, "A", vars);
          r.sa.b = eval_param(spec, "b", vars);
          r.sa.p_inc = eval_param(spec, "p_inc", vars);
          r.sa.epsilon = eval_param(spec, "epsilon", vars);
          r.sa.chi_init = eval_param(spec, "chi_init", vars);
          r.sa.validate(n);
        }
        break;
      }
      case AlgorithmKind::OnePlusOne:
        r.rate = eval_param(spec, "rate", vars);
        if (!(r.rate > 0.0 && r.rate <= 0.5)) throw ConfigError(name + ".rate outside (0, 1/2]");
        break;
      case AlgorithmKind::OnePlusOneAlpha:
        r.alpha.A = eval_param(spec, "A", vars);
        r.alpha.b = eval_param(spec, "b", vars);
        r.alpha.epsilon = eval_param(spec, "epsilon", vars);
        r.alpha.chi_init = eval_param(spec, "chi_init", vars);
        if (auto it = spec.params.find("success"); it != spec.params.end()) {
          r.alpha.success = parse_success_rule(it->second);
        }
        r.alpha.validate(n);
        break;
    }
  } catch (const ParameterError& e) {
    throw ConfigError(name + ": " + e.what());
  }
  return r;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("n must be at least 1");
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.budget < 1) throw ConfigError("budget must be positive");
  const auto ks = resolve_k(cfg);
  for (const auto& spec : cfg.algorithms) {
    for (auto k : ks) {
      const auto r = resolve_algorithm(spec, cfg.n, k);
      const bool population =
          r.kind == AlgorithmKind::SelfAdaptive || r.kind == AlgorithmKind::MuLambdaStatic;
      if (population && cfg.budget < r.lambda) {
        throw ConfigError("budget is smaller than one generation of " +
                          std::string(to_token(r.kind)));
      }
    }
  }
  // Normalization compatibility.
  for (auto k : ks) {
    (void)normalize(1.0, cfg.function, static_cast<double>(cfg.n), static_cast<double>(k),
                    cfg.normalization);
  }
}

}  // namespace saea::harness

#include "qdeco/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "qdeco/errors.hpp"

namespace qdeco {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("invalid_value",
                          "key '" + key + "': cannot parse '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    throw ValidationError("invalid_value",
                          "key '" + key + "': expected an integer, got '" + v +
                              "'");
  return i;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ValidationError("invalid_value",
                        "key '" + key + "': expected a boolean, got '" + v +
                            "'");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("invalid_config_line",
                            "line " + std::to_string(lineno) +
                                ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (kv.count(key))
      throw ValidationError("duplicate_config_key",
                            "key '" + key + "' given twice");
    kv[key] = value;
  }

  if (kv.count("temperature") && kv.count("coth_epsilon"))
    throw ValidationError(
        "temperature_conflict",
        "give either 'temperature' or 'coth_epsilon', not both");

  RunConfig cfg;
  auto take = [&kv](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::pair<bool, std::string>{false, {}};
    std::pair<bool, std::string> out{true, it->second};
    kv.erase(it);
    return out;
  };

  if (auto v = take("mass"); v.first) cfg.params.mass = to_double("mass", v.second);
  if (auto v = take("omega"); v.first)
    cfg.params.omega = to_double("omega", v.second);
  if (auto v = take("lambda"); v.first)
    cfg.params.lambda = to_double("lambda", v.second);
  if (auto v = take("mu"); v.first) cfg.params.mu = to_double("mu", v.second);
  if (auto v = take("hbar"); v.first)
    cfg.params.constants.hbar = to_double("hbar", v.second);
  if (auto v = take("boltzmann"); v.first)
    cfg.params.constants.boltzmann = to_double("boltzmann", v.second);
  if (auto v = take("temperature"); v.first)
    cfg.params.temperature = to_double("temperature", v.second);
  if (auto v = take("coth_epsilon"); v.first)
    cfg.params = with_coth_epsilon(cfg.params,
                                   to_double("coth_epsilon", v.second));
  if (auto v = take("delta"); v.first)
    cfg.initial.delta = to_double("delta", v.second);
  if (auto v = take("r"); v.first) cfg.initial.r = to_double("r", v.second);
  if (auto v = take("sigma_q0"); v.first)
    cfg.initial.sigma_q0 = to_double("sigma_q0", v.second);
  if (auto v = take("sigma_p0"); v.first)
    cfg.initial.sigma_p0 = to_double("sigma_p0", v.second);
  if (auto v = take("t_final"); v.first)
    cfg.t_final = to_double("t_final", v.second);
  if (auto v = take("samples"); v.first)
    cfg.samples = to_int("samples", v.second);
  if (auto v = take("oracle"); v.first)
    cfg.oracle = to_bool("oracle", v.second);
  if (auto v = take("oracle_n"); v.first)
    cfg.oracle_n = to_int("oracle_n", v.second);
  if (auto v = take("out"); v.first) cfg.out_dir = v.second;

  if (!kv.empty())
    throw ValidationError("unknown_config_key",
                          "unknown config key '" + kv.begin()->first + "'");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("config_not_found",
                          "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void validate(const RunConfig& cfg) {
  validate_for_bath(cfg.params);
  validate(cfg.initial);
  if (!(cfg.t_final >= 0.0))
    throw ValidationError("t_final_nonnegative", "t_final must be >= 0");
  if (cfg.samples < 2)
    throw ValidationError("samples_min_2", "samples must be at least 2");
  if (cfg.oracle_n < 4)
    throw ValidationError("oracle_dimension", "oracle_n must be at least 4");
}

}  // namespace qdeco

#include "cellsim/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cellsim/errors.hpp"
#include "cellsim/text.hpp"

namespace cellsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double_value(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(key, "expected a finite number, got '" + value + "'");
  }
  return out;
}

long long parse_int_value(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  long long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
  return out;
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError(key, "expected an unsigned integer, got '" + value + "'");
  }
  return out;
}

std::vector<double> parse_list_value(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream stream(value);
  while (std::getline(stream, item, ',')) {
    if (trim(item).empty()) throw ConfigError(key, "empty entry in list '" + value + "'");
    out.push_back(parse_double_value(key, item));
  }
  if (out.empty()) throw ConfigError(key, "expected a comma-separated list, got '" + value + "'");
  return out;
}

PolicySelection parse_policy_value(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "rate") return PolicySelection::rate;
  if (v == "power") return PolicySelection::power;
  if (v == "both") return PolicySelection::both;
  throw ConfigError(key, "expected rate, power, or both, got '" + value + "'");
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "M") {
    cfg.M = static_cast<int>(parse_int_value(key, value));
  } else if (key == "K") {
    cfg.K = static_cast<int>(parse_int_value(key, value));
  } else if (key == "K_over_M") {
    cfg.K_over_M = parse_double_value(key, value);
  } else if (key == "r_net") {
    cfg.r_net = parse_double_value(key, value);
  } else if (key == "r_bs") {
    cfg.r_bs = parse_double_value(key, value);
  } else if (key == "r_m") {
    cfg.r_m = parse_double_value(key, value);
  } else if (key == "alpha") {
    cfg.alpha = parse_double_value(key, value);
  } else if (key == "d0") {
    cfg.d0 = parse_double_value(key, value);
  } else if (key == "sigma_s_dB") {
    cfg.sigma_s_dB = parse_double_value(key, value);
  } else if (key == "m_serving") {
    cfg.m_serving = static_cast<int>(parse_int_value(key, value));
  } else if (key == "m_interfering") {
    cfg.m_interfering = parse_double_value(key, value);
  } else if (key == "Gamma_dB") {
    cfg.Gamma_dB = parse_double_value(key, value);
  } else if (key == "G_spread") {
    cfg.G_spread = static_cast<int>(parse_int_value(key, value));
  } else if (key == "h_chip") {
    cfg.h_chip = parse_double_value(key, value);
  } else if (key == "f_p") {
    cfg.f_p = parse_double_value(key, value);
  } else if (key == "epsilon_hat") {
    cfg.epsilon_hat = parse_double_value(key, value);
  } else if (key == "policy") {
    cfg.policy = parse_policy_value(key, value);
  } else if (key == "n_trials") {
    cfg.n_trials = static_cast<int>(parse_int_value(key, value));
  } else if (key == "master_seed") {
    cfg.master_seed = parse_u64_value(key, value);
  } else if (key == "cell_edge_fraction") {
    cfg.cell_edge_fraction = parse_double_value(key, value);
  } else if (key == "ccdf_r_max") {
    cfg.ccdf_r_max = parse_double_value(key, value);
  } else if (key == "ccdf_points") {
    cfg.ccdf_points = static_cast<int>(parse_int_value(key, value));
  } else if (key == "workers") {
    cfg.workers = static_cast<int>(parse_int_value(key, value));
  } else if (key == "max_attempts_per_point") {
    cfg.max_attempts_per_point = static_cast<int>(parse_int_value(key, value));
  } else if (key == "max_redraws") {
    cfg.max_redraws = static_cast<int>(parse_int_value(key, value));
  } else if (key == "K_over_M_list") {
    cfg.K_over_M_list = parse_list_value(key, value);
  } else if (key == "r_bs_list") {
    cfg.r_bs_list = parse_list_value(key, value);
  } else if (key == "sigma_s_list") {
    cfg.sigma_s_list = parse_list_value(key, value);
  } else {
    throw ConfigError(key, "unknown configuration key");
  }
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

std::string join_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

int resolved_K(const ExperimentConfig& cfg) {
  if (cfg.K > 0) return cfg.K;
  return static_cast<int>(std::llround(cfg.K_over_M * cfg.M));
}

std::vector<PolicyKind> selected_policies(const ExperimentConfig& cfg) {
  switch (cfg.policy) {
    case PolicySelection::rate:
      return {PolicyKind::rate_control};
    case PolicySelection::power:
      return {PolicyKind::power_control};
    case PolicySelection::both:
      return {PolicyKind::rate_control, PolicyKind::power_control};
  }
  return {};
}

const char* policy_selection_name(PolicySelection policy) {
  switch (policy) {
    case PolicySelection::rate:
      return "rate";
    case PolicySelection::power:
      return "power";
    case PolicySelection::both:
      return "both";
  }
  return "rate";
}

ExperimentConfig parse_config(
    const std::optional<std::string>& path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  ExperimentConfig cfg;
  if (path) {
    std::ifstream file(*path);
    if (!file) throw ConfigError("config", "cannot open config file '" + *path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
      ++line_no;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string stripped = trim(line);
      if (stripped.empty()) continue;
      const std::size_t eq = stripped.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("config", "line " + std::to_string(line_no) +
                                        " of '" + *path + "' is not key = value");
      }
      apply_setting(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
  }
  for (const auto& [key, value] : overrides) apply_setting(cfg, trim(key), trim(value));
  validate_config(cfg);
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  require(cfg.M >= 1, "M", "need at least one station");
  require(cfg.K >= 0, "K", "mobile count cannot be negative");
  require(cfg.K_over_M > 0.0, "K_over_M", "load must be positive");
  require(resolved_K(cfg) >= 1, "K_over_M", "resolved mobile count must be at least 1");
  require(cfg.r_net > 0.0, "r_net", "network radius must be positive");
  require(cfg.r_bs >= 0.0, "r_bs", "exclusion radius cannot be negative");
  require(cfg.r_m >= 0.0, "r_m", "exclusion radius cannot be negative");
  require(cfg.alpha >= 2.0, "alpha", "path-loss exponent must be at least 2");
  require(cfg.d0 > 0.0, "d0", "reference distance must be positive");
  require(cfg.sigma_s_dB >= 0.0, "sigma_s_dB", "shadowing deviation cannot be negative");
  require(cfg.m_serving >= 1, "m_serving", "serving Nakagami parameter must be at least 1");
  require(cfg.m_interfering >= 0.5, "m_interfering", "Nakagami parameter must be at least 0.5");
  require(std::isfinite(cfg.Gamma_dB), "Gamma_dB", "must be finite");
  require(cfg.G_spread >= 1, "G_spread", "processing gain must be at least 1");
  require(cfg.h_chip > 0.0 && cfg.h_chip <= 1.0, "h_chip", "must lie in (0, 1]");
  require(cfg.f_p >= 0.0 && cfg.f_p < 1.0, "f_p", "must lie in [0, 1)");
  require(cfg.epsilon_hat > 0.0 && cfg.epsilon_hat < 1.0, "epsilon_hat",
          "must lie strictly inside (0, 1)");
  require(cfg.n_trials >= 1, "n_trials", "need at least one trial");
  require(cfg.cell_edge_fraction > 0.0 && cfg.cell_edge_fraction <= 1.0,
          "cell_edge_fraction", "must lie in (0, 1]");
  require(cfg.ccdf_r_max > 0.0, "ccdf_r_max", "rate grid must extend past zero");
  require(cfg.ccdf_points >= 2, "ccdf_points", "rate grid needs at least two points");
  require(cfg.workers >= 0, "workers", "worker count cannot be negative");
  require(cfg.max_attempts_per_point >= 1, "max_attempts_per_point",
          "need at least one attempt per point");
  require(cfg.max_redraws >= 0, "max_redraws", "redraw count cannot be negative");
  for (double v : cfg.K_over_M_list) {
    require(v > 0.0 && std::llround(v * cfg.M) >= 1, "K_over_M_list",
            "every load must resolve to at least one mobile");
  }
  for (double v : cfg.r_bs_list) {
    require(v >= 0.0, "r_bs_list", "exclusion radii cannot be negative");
  }
  for (double v : cfg.sigma_s_list) {
    require(v >= 0.0, "sigma_s_list", "shadowing deviations cannot be negative");
  }
}

std::vector<std::pair<std::string, std::string>> config_items(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> items;
  items.emplace_back("M", std::to_string(cfg.M));
  items.emplace_back("K", std::to_string(resolved_K(cfg)));
  items.emplace_back("K_over_M", format_double(cfg.K_over_M));
  items.emplace_back("r_net", format_double(cfg.r_net));
  items.emplace_back("r_bs", format_double(cfg.r_bs));
  items.emplace_back("r_m", format_double(cfg.r_m));
  items.emplace_back("alpha", format_double(cfg.alpha));
  items.emplace_back("d0", format_double(cfg.d0));
  items.emplace_back("sigma_s_dB", format_double(cfg.sigma_s_dB));
  items.emplace_back("m_serving", std::to_string(cfg.m_serving));
  items.emplace_back("m_interfering", format_double(cfg.m_interfering));
  items.emplace_back("Gamma_dB", format_double(cfg.Gamma_dB));
  items.emplace_back("G_spread", std::to_string(cfg.G_spread));
  items.emplace_back("h_chip", format_double(cfg.h_chip));
  items.emplace_back("f_p", format_double(cfg.f_p));
  items.emplace_back("epsilon_hat", format_double(cfg.epsilon_hat));
  items.emplace_back("policy", policy_selection_name(cfg.policy));
  items.emplace_back("n_trials", std::to_string(cfg.n_trials));
  items.emplace_back("master_seed", std::to_string(cfg.master_seed));
  items.emplace_back("cell_edge_fraction", format_double(cfg.cell_edge_fraction));
  items.emplace_back("ccdf_r_max", format_double(cfg.ccdf_r_max));
  items.emplace_back("ccdf_points", std::to_string(cfg.ccdf_points));
  items.emplace_back("workers", std::to_string(cfg.workers));
  items.emplace_back("max_attempts_per_point", std::to_string(cfg.max_attempts_per_point));
  items.emplace_back("max_redraws", std::to_string(cfg.max_redraws));
  if (!cfg.K_over_M_list.empty())
    items.emplace_back("K_over_M_list", join_list(cfg.K_over_M_list));
  if (!cfg.r_bs_list.empty()) items.emplace_back("r_bs_list", join_list(cfg.r_bs_list));
  if (!cfg.sigma_s_list.empty())
    items.emplace_back("sigma_s_list", join_list(cfg.sigma_s_list));
  return items;
}

}  // namespace cellsim

#include "run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace bergman::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value) {
  int v = 0;
  const char* last = value.data() + value.size();
  auto res = std::from_chars(value.data(), last, v);
  if (res.ec != std::errc() || res.ptr != last) throw ConfigError("invalid integer for " + key + ": '" + value + "'");
  return v;
}

double parse_real(const std::string& key, const std::string& value) {
  double v = 0.0;
  const char* last = value.data() + value.size();
  auto res = std::from_chars(value.data(), last, v);
  if (res.ec != std::errc() || res.ptr != last) throw ConfigError("invalid number for " + key + ": '" + value + "'");
  return v;
}

void check_symbol(const std::string& flag, const std::string& text) {
  bergman_symbol* s = nullptr;
  if (bergman_symbol_parse(text.c_str(), &s) != BERGMAN_OK) {
    throw ConfigError("--" + flag + " \"" + text + "\": " + bergman_last_error());
  }
  bergman_symbol_free(s);
}

}  // namespace

void parse_quad(const std::string& text, int& n_r, int& n_theta) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw ConfigError("quadrature orders must look like <n_r>x<n_theta>, got '" + text + "'");
  n_r = parse_int("quad", text.substr(0, x));
  n_theta = parse_int("quad", text.substr(x + 1));
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int("sweep", trim(item)));
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "domain") {
    cfg.domain = value;
    cfg.domain_set = true;
  } else if (key == "symbol") {
    cfg.symbol = value;
  } else if (key == "phi") {
    cfg.phi = value;
  } else if (key == "psi") {
    cfg.psi = value;
  } else if (key == "trunc") {
    cfg.trunc = parse_int(key, value);
  } else if (key == "quad") {
    parse_quad(value, cfg.n_r, cfg.n_theta);
  } else if (key == "n-max") {
    cfg.n_max = parse_int(key, value);
  } else if (key == "j-max") {
    cfg.j_max = parse_int(key, value);
  } else if (key == "tol") {
    cfg.tol = parse_real(key, value);
  } else if (key == "format") {
    cfg.format = value;
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "method") {
    cfg.method = value;
  } else if (key == "partner") {
    cfg.partners.push_back(value);
  } else if (key == "sweep") {
    cfg.sweep = parse_int_list(value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigIoError("cannot open config file '" + path + "'");
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    try {
      if (eq == std::string::npos) throw ConfigError("expected 'key = value'");
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  bergman_domain d{};
  if (bergman_domain_parse(cfg.domain.c_str(), &d) != BERGMAN_OK) {
    throw ConfigError(std::string("--domain: ") + bergman_last_error());
  }
  if (cfg.trunc < 1) throw ConfigError("--trunc must be at least 1");
  if (cfg.n_r < 1 || cfg.n_theta < 1) throw ConfigError("--quad orders must be positive");
  if (cfg.n_max < 0) throw ConfigError("--n-max must be nonnegative");
  if (cfg.j_max < 0) throw ConfigError("--j-max must be nonnegative");
  if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("--format must be json or csv");
  if (cfg.method != "default" && cfg.method != "closed" && cfg.method != "quadrature") {
    throw ConfigError("--method must be default, closed or quadrature");
  }
  for (int n : cfg.sweep) {
    if (n < 1) throw ConfigError("--sweep orders must be positive");
  }
  if (!cfg.symbol.empty()) check_symbol("symbol", cfg.symbol);
  if (!cfg.phi.empty()) check_symbol("phi", cfg.phi);
  if (!cfg.psi.empty()) check_symbol("psi", cfg.psi);
  for (const auto& p : cfg.partners) check_symbol("partner", p);
}

bergman_domain to_c_domain(const RunConfig& cfg) {
  bergman_domain d{};
  if (bergman_domain_parse(cfg.domain.c_str(), &d) != BERGMAN_OK) {
    throw ConfigError(std::string("--domain: ") + bergman_last_error());
  }
  return d;
}

bergman_method to_c_method(const RunConfig& cfg) {
  if (cfg.method == "closed") return BERGMAN_METHOD_CLOSED_FORM;
  if (cfg.method == "quadrature") return BERGMAN_METHOD_QUADRATURE;
  return BERGMAN_METHOD_DEFAULT;
}

bergman_format to_c_format(const RunConfig& cfg) {
  return cfg.format == "csv" ? BERGMAN_FORMAT_CSV : BERGMAN_FORMAT_JSON;
}

}  // namespace bergman::cli

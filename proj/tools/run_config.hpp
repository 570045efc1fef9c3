#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bergman/bergman_c.h"

namespace bergman::cli {

/// Raised for malformed configuration or flag values; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The configuration file could not be read; maps to exit code 3.
class ConfigIoError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

struct RunConfig {
  std::string domain = "disk";
  std::string symbol;
  std::string phi;
  std::string psi;
  int trunc = 32;
  int n_r = 64;
  int n_theta = 256;
  int n_max = 4;
  int j_max = 8;
  double tol = 0.0;  // <= 0: experiment default
  std::string format = "json";
  std::string out;   // empty: stdout
  std::string method = "default";
  std::vector<std::string> partners;
  std::vector<int> sweep;

  bool domain_set = false;
};

/// Parses "<n_r>x<n_theta>".
void parse_quad(const std::string& text, int& n_r, int& n_theta);
std::vector<int> parse_int_list(const std::string& text);

/// Applies one `key = value` setting; keys are the long CLI flag names.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a line-oriented `key = value` file ('#' starts a comment) on top of
/// the defaults. Errors name the offending line.
RunConfig load_config(const std::string& path);

/// Checks every field, including domain and symbol syntax, before any
/// computation.
void validate(const RunConfig& cfg);

bergman_domain to_c_domain(const RunConfig& cfg);
bergman_method to_c_method(const RunConfig& cfg);
bergman_format to_c_format(const RunConfig& cfg);

}  // namespace bergman::cli

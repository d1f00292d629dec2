#ifndef ONCOLATTICE_CONFIG_HPP
#define ONCOLATTICE_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "oncolattice/experiments.hpp"

namespace oncolattice {

/// Malformed or invalid configuration. Messages read "source:line:col: key.path: detail".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scenario parse_config(const std::string& text, const std::string& source = "<config>");
Scenario load_config(const std::string& path);

/// Canonical YAML; parse_config(serialize_config(s)) reproduces s exactly.
std::string serialize_config(const Scenario& s);

/// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string config_hash(const Scenario& s);

}  // namespace oncolattice

#endif  // ONCOLATTICE_CONFIG_HPP

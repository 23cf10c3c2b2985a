#pragma once

// Harness configuration documents (JSON, schema "prodsys-config/1").

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "prodsys/product_system.hpp"

namespace prodsys {

inline constexpr const char* kConfigSchema = "prodsys-config/1";

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct SystemConfig {
  ProductSystem system;
  std::optional<IdealBound> truncation;
  std::uint32_t working_dim = 3;
  std::string label;
  std::optional<IdealBound> vn_support;

  const Monoid& monoid() const { return system.monoid(); }
  /// The truncation, or ConfigError when a Fock computation needs one.
  const IdealBound& require_truncation() const;
};

/// Validates and builds; collects every problem before throwing ConfigError.
SystemConfig parse_config(const nlohmann::json& doc);
SystemConfig load_config(const std::string& path);
/// Trivial system over N*N truncated at length 3.
SystemConfig default_config();

nlohmann::json to_json(const SystemConfig& cfg);

// Ready-made configurations.
SystemConfig trivial_config(Monoid monoid, IdealBound bound, std::string label);
SystemConfig dims_config(Monoid monoid, std::vector<GeneratorDim> dims, IdealBound bound, std::string label);

}  // namespace prodsys

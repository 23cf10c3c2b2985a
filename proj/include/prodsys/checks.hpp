#pragma once

// Property suites run by the harness. Every suite is deterministic for a
// fixed configuration and seed.

#include <cstdint>
#include <string>
#include <vector>

#include "prodsys/config.hpp"
#include "prodsys/report.hpp"

namespace prodsys {

inline constexpr double kMatrixTolerance = 1e-10;
inline constexpr double kNormRelativeTolerance = 1e-8;

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Random cases per randomized check; 0 picks the suite default.
  std::size_t samples = 0;
};

/// Known suite ids, "all" last.
const std::vector<std::string>& suite_ids();

/// Throws std::invalid_argument for an unknown id and ConfigError when a
/// Fock suite runs without a truncation. Unsupported operations become
/// reports with Status::unsupported.
SuiteReport run_check_suite(const SystemConfig& cfg, const std::string& suite, const SuiteOptions& opts = {});

}  // namespace prodsys

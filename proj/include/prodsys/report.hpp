#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace prodsys {

inline constexpr const char* kReportSchema = "prodsys-report/1";

enum class Status { pass, fail, inexact, unsupported };

std::string to_string(Status s);

struct CheckReport {
  std::string name;
  Status status = Status::pass;
  std::size_t cases = 0;
  nlohmann::json residuals = nlohmann::json::object();
  nlohmann::json witnesses = nlohmann::json::object();
  /// Inputs of the first offending case, enough to replay it.
  nlohmann::json inputs = nlohmann::json::object();
  std::string detail;
  double wall_ms = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::string system;
  std::uint64_t seed = 0;
  std::vector<CheckReport> checks;
  std::string narrative;

  bool passed() const;
};

nlohmann::json to_json(const SuiteReport& r, bool timing);
std::string to_text(const SuiteReport& r, bool timing);

/// 0 when every check passed, 1 on any failure, otherwise 3 when some check
/// was inexact or unsupported.
int exit_code(const std::vector<SuiteReport>& reports);

}  // namespace prodsys

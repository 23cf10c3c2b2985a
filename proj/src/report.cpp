#include "prodsys/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace prodsys {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inexact: return "inexact";
    case Status::unsupported: return "unsupported";
  }
  return "?";
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.status == Status::pass; });
}

nlohmann::json to_json(const SuiteReport& r, bool timing) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j{{"name", c.name},       {"status", to_string(c.status)}, {"cases", c.cases},
                     {"residuals", c.residuals}, {"witnesses", c.witnesses}};
    if (!c.inputs.empty()) j["inputs"] = c.inputs;
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (timing) j["wall_ms"] = c.wall_ms;
    checks.push_back(std::move(j));
  }
  nlohmann::json out{{"schema", kReportSchema}, {"suite", r.suite}, {"system", r.system},
                     {"seed", r.seed},          {"passed", r.passed()}, {"checks", checks}};
  if (!r.narrative.empty()) out["narrative"] = r.narrative;
  return out;
}

std::string to_text(const SuiteReport& r, bool timing) {
  std::ostringstream out;
  out << "suite " << r.suite << " on " << r.system << " (seed " << r.seed << ")\n";
  for (const auto& c : r.checks) {
    out << "  [" << std::left << std::setw(11) << to_string(c.status) << "] " << c.name << "  cases=" << c.cases;
    for (const auto& [k, v] : c.residuals.items()) out << "  " << k << "=" << v.dump();
    if (timing) out << "  " << std::fixed << std::setprecision(1) << c.wall_ms << "ms" << std::defaultfloat;
    out << '\n';
    if (!c.detail.empty()) out << "      " << c.detail << '\n';
    if (c.status == Status::fail && !c.inputs.empty()) out << "      replay: " << c.inputs.dump() << '\n';
  }
  if (!r.narrative.empty()) out << r.narrative << (r.narrative.back() == '\n' ? "" : "\n");
  return out.str();
}

int exit_code(const std::vector<SuiteReport>& reports) {
  bool other = false;
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      if (c.status == Status::fail) return 1;
      if (c.status != Status::pass) other = true;
    }
  }
  return other ? 3 : 0;
}

}  // namespace prodsys

#pragma once

#include <string>
#include <vector>

#include "prodsys/report.hpp"

namespace prodsys {

const std::vector<std::string>& demo_ids();

/// Runs a named scenario at its built-in truncation. Throws
/// std::invalid_argument for an unknown name.
SuiteReport run_demo(const std::string& name);

}  // namespace prodsys

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "superbos/report.hpp"

namespace superbos::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kNumericFail = 1;
inline constexpr int kUsage = 2;

// args excludes the program name. The JSON report goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Coefficients as [{"subset": "θ1θ2", "re": ..., "im": ...}] sorted by bitmask.
nlohmann::json grassmann_json(const GrassmannNumber& g);
nlohmann::json report_json(const Report& r);

}  // namespace superbos::cli

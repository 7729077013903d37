#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace rabi_qes::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

/// Runs `rabi-qes` with the given arguments (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// --- formatting -----------------------------------------------------------

/// 17 significant digits, enough for a lossless text round trip.
std::string format_real(double value);
void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);

// --- verification suites --------------------------------------------------

enum class Suite { golden, oracle, all };

struct CheckResult {
  std::string name;
  bool pass = false;
  nlohmann::json measured;
};

std::vector<CheckResult> run_suite(Suite suite);
nlohmann::json report_json(Suite suite, const std::vector<CheckResult>& checks,
                           const std::optional<std::string>& timestamp = std::nullopt);

}  // namespace rabi_qes::cli

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "khavinson/proofcheck.hpp"

namespace khav::cli {

inline constexpr std::string_view kToolName = "khavinson";
inline constexpr std::string_view kVersion = "1.0.0";

enum ExitCode : int { ok = 0, violation = 1, usage = 2, numerical = 3 };

nlohmann::ordered_json to_json(const proofcheck::VerificationReport& rep);

/// Runs one command. args excludes the program name. All output goes to out
/// (results) and err (diagnostics); files are written only for --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace khav::cli

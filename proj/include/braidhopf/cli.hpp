// Command-line front end. Every command writes a JSON report and prints a short summary.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace braidhopf::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr const char* kOutputDirVariable = "BRAIDHOPF_OUT";

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kUsageError = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// JSON Schema (draft 4) for run manifests.
const std::string& manifest_schema();

}  // namespace braidhopf::cli

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace repulse::cli {

inline constexpr const char* kVersion = "0.1.0";

// A fully resolved run: one command, a flat validated key -> value map, output
// location and seed.  Identical RunConfigs produce byte-identical artifacts.
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string output_dir = ".";
    long long seed = 0;
    int jobs = 1;
};

struct ParsedFile {
    std::string command;
    std::map<std::string, std::string> values;  // later keys already folded over earlier ones
};

// Line-oriented `key = value` grammar; `#` starts a comment; later keys override
// earlier ones; the command comes from `command = <name>`.  Throws argument_error
// with a line number on syntax errors.
ParsedFile parse_config(const std::string& text);

// Resolve file values and command-line overrides into a validated RunConfig.
RunConfig resolve(const std::string& command, const std::map<std::string, std::string>& file_values,
                  const std::map<std::string, std::string>& flag_values);

// Execute a resolved run; writes artifacts plus manifest.json under output_dir.
// Returns names of the artifact files written (manifest last).
std::vector<std::string> execute(const RunConfig& config);

// Full argv-level entry point: returns the process exit status
// (0 ok, 2 validation error, 3 numeric/precondition error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string help_text();

}  // namespace repulse::cli

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "relmass/params.hpp"

namespace relmass::cli {

enum class Command { spectrum, evolve, classical, figure1, oracle };

// A fully validated run request.  Optional fields fall back to
// command-specific defaults documented in the README and --help.
struct RunConfig {
    PhysicalParams params;
    Command command;
    std::string out_path;           // empty: CSV goes to stdout
    std::optional<double> t_end;    // evolve, classical
    std::optional<int> samples;     // rows/points, meaning depends on command
    std::optional<int> grid;        // finest oracle grid
};

// Throws InvalidParameterError on out-of-range options.
void validate(const RunConfig& cfg);

// Executes one command; CSV goes to out_path or `out`, human-readable
// summaries go to `diag`.  Returns the process exit code: 0 on success,
// 1 on numeric/tolerance failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

// Full argv-level entry: parses arguments, loads the config file, runs.
// Exit codes: 0 success, 1 numeric/tolerance failure, 2 usage/config error.
int main_entry(int argc, const char* const* argv);

}  // namespace relmass::cli

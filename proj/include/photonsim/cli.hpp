// Command-line front end: configuration ingestion, experiment orchestration,
// and report emission. Exposed as a library call so tests can drive it.
#pragma once

#include <string>
#include <vector>

namespace photonsim {

// Runs one subcommand (scalability, csdesign, map, simulate, compare).
// Returns the process exit status; on failure a machine-readable error
// report is written to stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace photonsim

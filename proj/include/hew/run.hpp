#pragma once

#include <string>
#include <vector>

namespace hew {

struct RunConfig {
    std::string command;            // solve | sweep | check | geometry | residuals
    std::string config_path;        // empty: built-in defaults
    std::string output_dir = ".";
    std::vector<std::string> overrides; // dotted-path key=value entries
};

// Execute one command end to end: parse the config, run the pipeline, write
// result.json / profile.csv / summary.csv / geometry.csv into output_dir.
// Returns the process exit status: 0 on success, 2 on a validation error,
// 3 on non-convergence or a numerical failure. Diagnostics go to stderr.
int run(const RunConfig& run_config);

} // namespace hew

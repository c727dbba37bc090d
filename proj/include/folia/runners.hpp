#pragma once

// Report-producing runners behind the CLI subcommands.  Each takes a Config,
// performs one battery of checks, and returns a Report; nothing here writes
// files except run_leaf_grid, which emits the CSV/PGM pair into
// cfg.out_dir and records the paths in the report.

#include <string>

#include "folia/config.hpp"
#include "folia/report.hpp"

namespace folia {

Report run_verify_cone(const Config& cfg);
Report run_classify(const Config& cfg, const std::string& rep_file);
Report run_laplacian_check(const Config& cfg);
Report run_universal_orbit(const Config& cfg);
Report run_leaf_grid(const Config& cfg);

}  // namespace folia

#ifndef SVGP_CLI_HPP
#define SVGP_CLI_HPP

#include <string>

#include "svgp/planner.hpp"

namespace svgp {

/// Entry point behind main(). Usage:
///   svgp plan --config <path> --out <dir> [--seed N] [--particles N]
///             [--max-iters N] [--threads N]
/// Exit codes: 0 success, 2 config error, 3 numerical error.
int run_cli(int argc, const char* const* argv);

/// Writes trace.csv, particle_<i>.csv, weights.csv, and meta.txt into
/// out_dir (created if missing). All numbers use 17 significant digits so
/// reruns are byte-stable.
void write_outputs(const PlanRequest& req, const PlanResult& result, const std::string& out_dir);

}  // namespace svgp

#endif  // SVGP_CLI_HPP

#pragma once

#include <string>
#include <vector>

namespace psigraph {

// Executes exactly one subcommand and returns the process exit code:
//   0  success / property holds / certificate passes
//   1  property-check failure (including structural infeasibility)
//   2  input error (bad flags, malformed files, invalid parameters)
//   3  solver non-convergence
// The JSON result is written to --out when given, to stdout otherwise.
// Identical argv + identical input files produce byte-identical output;
// stochastic subcommands take mandatory seeds.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace psigraph

#pragma once

#include <string>
#include <vector>

namespace jetcurv {

/**
 * Command-line entry point.  Exit codes: 0 all verdicts pass, 1 identity
 * failure (report still written), 2 degenerate metric or bad configuration
 * (diagnostic on stderr).
 */
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace jetcurv

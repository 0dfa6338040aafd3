#pragma once

#include <string>
#include <vector>

namespace chenflow::cli {

// Full CLI entry point.  Returns the process exit code: 0 success, 2 usage
// or configuration error, 1 numerical failure.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace chenflow::cli

#pragma once

#include <string>
#include <vector>

namespace qs::cli {

// Full command surface of the quasispec binary; callable in-process.
// Returns the process exit code (0 ok, 2 usage/domain, 3 resolution).
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args); // args without argv[0]

} // namespace qs::cli

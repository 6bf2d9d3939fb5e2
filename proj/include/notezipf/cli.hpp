#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace notezipf::cli {

/// Entry point for the `notezipf` tool: analyze | simulate | compare.
/// Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace notezipf::cli

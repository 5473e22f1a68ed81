#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace selfsim::cli {

/// Runs the selfsim command line. Returns 0 on success, 1 on an engine
/// error and 2 on a usage error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace selfsim::cli

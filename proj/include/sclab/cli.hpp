#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sclab::cli {

/// Entry point shared by the binary and the tests. Returns the process exit
/// status: 0 on success, 2 on validation failure, 1 on internal error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sclab::cli

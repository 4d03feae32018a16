#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jex::cli {

/// Dispatch one command-line invocation. Returns the process exit status:
/// 0 on success, 1 on I/O failure, 2 on validation failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace jex::cli

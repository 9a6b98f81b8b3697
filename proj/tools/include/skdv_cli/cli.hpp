#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skdv::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

// args excludes the program name. Artifacts go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skdv::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bbcrystal {

enum ExitCode { ExitOk = 0, ExitFailed = 1, ExitInvalid = 2 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bbcrystal

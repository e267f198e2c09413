#pragma once

// Command-line front end. Exit codes: 0 success, 1 semantic failure
// (failed obligations, rejected synthesis), 2 usage or parse failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace obk::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obk::cli

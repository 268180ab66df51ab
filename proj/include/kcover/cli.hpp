#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kcover::cli {

/// Exit codes: 0 success, 1 verification or condition failure, 2 usage or I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace kcover::cli

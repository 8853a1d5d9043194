#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pbg {

// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace pbg

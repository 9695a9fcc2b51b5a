#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mpa::cli {

// full command-line surface; args excludes the program name.
// returns 0 on success, 2 on validation errors, 3 on solver failures
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}

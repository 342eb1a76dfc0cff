// Command-line front end. `run` is the whole program behind a testable
// interface: exit 0 on success, 2 on input errors, 3 on internal defects.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ellimod::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ellimod::cli

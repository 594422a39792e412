#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace harmonica {

// Exit codes: 0 colorable / property holds, 2 not colorable / valid
// obstruction, 3 verification failed, 1 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace harmonica

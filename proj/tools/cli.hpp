#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tightham::cli {

// args excludes the program name. Returns the process exit code: 0 success,
// 1 domain failure, 2 usage or input error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tightham::cli

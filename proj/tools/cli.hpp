#pragma once

#include <iosfwd>

namespace foamcalc::cli {

// Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace foamcalc::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ergolab::cli {

enum Exit : int { kOk = 0, kViolated = 1, kNonExhaustive = 2, kInputError = 3 };

// args excludes the program name
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ergolab::cli

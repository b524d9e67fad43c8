#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace roabp {

/// Exit codes: 0 when the tested identity holds (zero / equivalent), 1 when it
/// does not, 2 on usage, parse or field errors. Informational commands exit 0.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roabp

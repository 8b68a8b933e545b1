#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weber_orr::cli {

/// Runs one command line. Returns 0 on success, 2 on invalid input, 3 when a
/// numerical procedure fails to converge.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "log:a,b,n" or "lin:a,b,n".
std::vector<double> parse_grid(const std::string& spec);

}  // namespace weber_orr::cli

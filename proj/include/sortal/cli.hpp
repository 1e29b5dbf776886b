#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sortal {

/// Batch command line. Returns 0 on success or a true verdict, 1 on a
/// refutation, 2 on usage or engine errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sortal

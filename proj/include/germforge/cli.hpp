#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace germforge {

// Entry point of the command-line tool; args exclude the program name.
// Exit status: 0 for any computed verdict (including negative ones),
// 2 when a computation failed, CLI11's own codes for usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace germforge

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hespeed/enumerate.hpp"

namespace hespeed {

/// Parses a property spec over `tag`: a catalogue family name, `all`,
/// `forbid:<file>` or `closure:<file>` (files hold one structure text per
/// line; blank lines and lines starting with '#' are skipped).
PropertySpec parse_property_spec(ClassTag tag, std::string_view text);

/// Runs the command line (without the program name). Returns the exit
/// status: 0 ok, 1 domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hespeed

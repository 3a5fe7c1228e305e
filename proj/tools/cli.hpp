#pragma once

#include <iosfwd>

namespace povsim::cli {

/// Exit status: 0 success, 1 runtime failure, 2 usage error (unknown flag,
/// invalid value, unreadable config file).
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace povsim::cli

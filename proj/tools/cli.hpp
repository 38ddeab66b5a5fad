#pragma once

#include <ostream>

namespace localmodal::cli
{

/// Exit codes shared by every subcommand.
enum exit_code : int
{
    verdict_true = 0,
    verdict_false = 1,
    failure = 2
};

/// Runs the `localmodal` command line. Output goes to `out`, diagnostics to
/// `err`; the return value is the process exit code.
int run( int argc, const char* const* argv, std::ostream& out, std::ostream& err );

} // namespace localmodal::cli

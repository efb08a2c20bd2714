#ifndef CHOREFAIR_CLI_HPP_
#define CHOREFAIR_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace chorefair {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,         // success, or the checked property holds
  kExitFalse = 1,      // the checked property fails / no witness exists
  kExitInvalid = 2,    // bad arguments or input files
  kExitInexact = 3,    // a search budget ran out before the answer was certified
  kExitInternal = 4,   // unexpected failure
};

/// Runs the command line given without the program name. Results go to out,
/// diagnostics to err.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chorefair

#endif  // CHOREFAIR_CLI_HPP_

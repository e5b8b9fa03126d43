#ifndef IVP_CLI_HPP_
#define IVP_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace ivp {

/* Exit codes of the ivp command. */
enum ExitCode {
    kExitOk = 0,         // YES, or a check that passed
    kExitInputError = 1, // unreadable or invalid input
    kExitUsage = 2,
    kExitNo = 3,            // NO, or a check that failed
    kExitIndeterminate = 4, // resource limit reached
};

/* Runs the command line `args` (without the program name). */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ivp

#endif

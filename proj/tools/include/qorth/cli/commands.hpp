#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qorth/cli/run_config.hpp"

namespace qorth::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kVerdictFails = 1;
inline constexpr int kParseError = 2;
inline constexpr int kInconclusive = 3;
inline constexpr int kConvergence = 4;
}  // namespace exit_code

/// Output of one subcommand: named artifacts plus the exit status.
struct CommandResult {
    int status = exit_code::kOk;
    std::vector<std::pair<std::string, std::string>> files;  // name, contents
    std::string summary;
};

CommandResult cmd_check(const RunConfig& cfg);
CommandResult cmd_measure(const RunConfig& cfg);
CommandResult cmd_expand(const RunConfig& cfg);
CommandResult cmd_lebesgue(const RunConfig& cfg);
CommandResult cmd_linearize(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

/// Full command line (args[0] is the program name). Artifacts go to the
/// configured output directory, or to out as one stream when none is set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qorth::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace posecodec::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParseFailure = 2,
  kIoFailure = 3,
  kValidationFailure = 4,
  kContainerFailure = 5,
  kFrameMismatch = 6,
};

/// Runs `posecodec <subcommand> [flags]`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace posecodec::cli

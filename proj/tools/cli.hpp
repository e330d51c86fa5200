#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adaimpact::cli {

/// Process exit codes; a stable contract for CI scripts.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kVerificationFailed = 3,
};

enum class Format { Json, Text };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string coverage;
  std::string output; // empty: standard output
  bool verify = false;
  Format format = Format::Json;
};

/// Entry point shared by main() and the tests. `args` excludes argv[0].
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace adaimpact::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rpys::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInputError = 2,
  kInternalError = 3,
};

// Runs one `rpys <command> ...` invocation. Diagnostics go to `err`; data
// goes to the files named by the options (stdout only for `--out -`).
int run(const std::vector<std::string>& args, std::ostream& err);
int run(int argc, char** argv);

// Expands `--config file.json` into flags. Keys name long options without
// the leading dashes; flags already present on the command line win.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace rpys::cli

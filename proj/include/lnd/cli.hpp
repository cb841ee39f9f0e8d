#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lnd {

// Exit codes: 0 success/true, 1 false/non-membership/failed check,
// 2 usage or input error, 3 cap exhaustion.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Runs every *.json fixture under `dir` in name order; prints one
// "PASS <name>" / "FAIL <name>: <witness>" line per fixture plus a summary.
int run_corpus(const std::string& dir, std::ostream& out, std::ostream& err);

const std::vector<std::string>& subcommand_names();

}  // namespace lnd

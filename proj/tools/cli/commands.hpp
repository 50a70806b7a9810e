#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace roughcontact::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kUsageError = 2 };

/// Parses argv (argv[0] is the program name), runs one subcommand and maps
/// failures to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_field_probe(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_drag_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fall(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bmo_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_lemma10(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace roughcontact::cli

// Dispatch layer turning parsed documents plus options into verification
// reports.  Every public library operation is reachable through at least
// one command; command_operations() exposes the mapping so a test can hold
// the dispatch table to that invariant.
#pragma once

#include "pathcat/dsl.hpp"

#include <map>
#include <string>
#include <vector>

namespace pathcat {

struct Report {
  Id command;
  int maxlen = 4;  // truncation in effect for this run
  struct Finding {
    Id code;
    Id location;
    std::string detail;
  };
  std::vector<Finding> findings;
  std::vector<std::string> checks;  // labels of checks that passed, in order
  std::vector<std::string> stats;   // "key = value", deterministic
  long runtime_ms = 0;              // excluded from the machine section

  bool pass() const { return findings.empty(); }
  int exit_code() const { return pass() ? 0 : 1; }
  // The machine-readable section: byte-identical for identical inputs.
  // One "PASS <check>" line per passed check, one "FAIL <code> <location>
  // <detail>" line per finding, plus the truncation and stat lines.
  std::string machine() const;
  // machine() plus the runtime comment line.
  std::string render() const;
};

struct CommandRequest {
  Id command;
  std::map<Id, std::string> opts;  // long-option name -> value
  int maxlen = 4;
};

// Runs one subcommand.  Input-shaped problems (unparseable file, dangling
// reference, unknown command, missing argument) are thrown as Error with a
// code in is_input_error_code; verification failures land in the report's
// findings instead.
Report run_command(const CommandRequest &req);

// The dispatch table's command names, sorted.
std::vector<Id> command_names();

// Command name -> library operations exercised when the command runs with
// the options that enable them.
std::map<Id, std::vector<Id>> command_operations();

}  // namespace pathcat

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vcspace {

struct RunConfig {
  std::string command;  // catalog, cyclics, build, homology, verify, validate-cylinder, fixed-set
  std::string group;
  std::optional<int> bound;
  std::vector<std::string> classes;  // "1,0" style vectors
  std::string subgroup;              // path to a subgroup JSON file
  std::string out;                   // report path; empty writes to the stream
  bool pretty = false;
  bool withBase = false;             // build: include the full X* cell list
  bool verbose = false;              // timing lines on the error stream
};

// Runs one command, writing a JSON report to `out` (or config.out) and returning the exit code.
// Failures produce {"error": {...}} in place of the report and a one-line message on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace vcspace

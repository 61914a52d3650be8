#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hbspace/config.hpp"

namespace hbspace {

struct JobConfig {
  std::string command;  // pair | kernel | defect | verify
  std::string b;
  std::size_t n = 1024;
  Tolerances tol;
  std::optional<std::string> lambda, z0;
  int k = 0;
  std::string output = "json";  // json | csv | pretty
  std::optional<std::string> emit;  // csv: residual table only
  std::uint64_t seed = 0;
};

enum ExitStatus : int { kExitOk = 0, kExitInput = 1, kExitFailure = 2 };

/// Runs one job. Reports go to `out`, diagnostics to `err`.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line and runs the job.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hbspace

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "powerspec/expsum.hpp"
#include "powerspec/field.hpp"
#include "powerspec/report.hpp"

namespace powerspec {

// Family mode gives (p, l); explicit mode gives (p, n) and, for the
// commands that need one, the exponent d.
struct RunConfig {
  std::string command;
  std::optional<std::uint32_t> p, l, n;
  std::optional<std::int64_t> d;
  std::string c, u, v;
  std::string method;
  OutputFormat format = OutputFormat::Json;
  std::string out;
  unsigned workers = 1;
  std::uint64_t budget = kDefaultPairBudget;
  std::uint64_t cap = kDefaultFieldCap;
  std::string preset = "desk";
  bool timings = false;

  // curve-count
  std::optional<std::uint32_t> s;
  std::uint32_t n1 = 1, n2 = 1, r1 = 0, r2 = 0;
  std::string alpha, beta;
  bool naive = false;

  // quad-mu
  std::optional<std::uint32_t> m;
  std::string a, b;
};

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitInvalid = 2 };

// Runs one subcommand, writes the rendered report to `out` (or config.out)
// and diagnostics to `err`.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses the command line and calls run_command.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace powerspec

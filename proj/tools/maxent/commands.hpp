#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "maxent/config.hpp"

namespace maxent::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitNonConvergence = 3,
  kExitVerification = 4,
};

enum class Format { Human, Structured };
enum class UnionMode { Minimax, Naive };

struct Options {
  Format format = Format::Human;
  int precision = 9;
  std::optional<std::uint64_t> seed;
  UnionMode union_mode = UnionMode::Minimax;
  SolverConfig config;
};

// Each command writes its report to `out`, diagnostics to `err`, and returns
// the process exit status.
int cmd_solve(const std::string& path, const Options& options, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& path, const Options& options, std::ostream& out, std::ostream& err);
int cmd_classify(const std::string& path, const Options& options, std::ostream& out, std::ostream& err);
int cmd_shift(const std::string& path, const Options& options, std::ostream& out, std::ostream& err);
int cmd_kelly(const std::string& path, const Options& options, std::ostream& out, std::ostream& err);
/// name is "bertrand" or "disjunctive".
int cmd_demo(const std::string& name, const Options& options, std::ostream& out, std::ostream& err);

}  // namespace maxent::cli

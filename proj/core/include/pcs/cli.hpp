#pragma once

#include <string>
#include <vector>

namespace pcs {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_parse_error = 2;
inline constexpr int exit_precision_exhausted = 3;
inline constexpr int exit_unsupported_input = 4;
inline constexpr int exit_check_falsified = 5;

struct Command {
  enum class Verb { invariants, semigroup, param, prepare, check, corpus };
  enum class CheckKind { gorenstein, delgado, key, main, milnor_formula, mu_stable, counting };

  Verb verb = Verb::invariants;
  CheckKind check_kind = CheckKind::main;
  std::string field_text = "QQ";
  int precision = 128;
  int lmax = 5;
  bool json = false;
  std::vector<std::string> expressions;
  std::string factors_file;
  std::string corpus_file;
  int workers = 0;  // 0: hardware concurrency
};

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_command(const Command& cmd);

// Line-delimited JSON corpus; entries run concurrently, output in input
// order, nonzero exit on any expectation mismatch.
RunResult corpus_run(const std::string& path, int workers = 0);

}  // namespace pcs

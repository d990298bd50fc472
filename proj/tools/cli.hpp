#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rglab/freegroup.hpp"

namespace rglab::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitInsufficient = 4;
inline constexpr int kExitAuditFailed = 5;

struct RunConfig {
  std::string subcommand;

  // sample / fold / lemma-audit
  int n = 2;
  int k = 3;
  std::string d = "0.4";  // decimal or p/q
  std::optional<std::uint64_t> seed;
  bool positive = false;
  std::optional<std::uint64_t> count_override;
  bool alpha = false;

  // certify / experiment
  int j = 1;
  std::string dprime;  // "", "auto", "mid", "none" or a value
  double d0 = 1.0 / 3.0;
  int base_k = 3;
  double threshold = 0.5;

  // experiment
  std::string model = "pos3";
  std::vector<int> ns;
  std::vector<std::string> ds;
  int trials = 0;
  bool timing = false;
  bool summary = false;

  // fold
  bool wjplus = false;
  std::vector<std::string> generators;
  std::string generators_file;

  // lemma-audit
  int max_len = 6;

  std::string input;
  std::string output;
  std::string csv;

  bool operator==(const RunConfig&) const = default;
};

// Parses argv (without the program name). Throws CLI::ParseError, including
// CLI::CallForHelp for --help.
RunConfig parse_run_config(const std::vector<std::string>& args);
// Flags that parse back to an equal config.
std::vector<std::string> to_args(const RunConfig& config);

// "1/3" or "0.3333".
double parse_density(const std::string& text);

// a b c ... with capitals for inverses when rank <= 26, numeric otherwise.
std::string format_alpha(const Word& w);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rglab::cli

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace thermoshift {

/// One invocation of the command-line tool.
///
/// params keys: delta, n_max, k_max, max_len, s_star, v_prime, output_path, format.
struct RunConfig {
  std::string command;  // analyze, reduce, equilibrium, gibbs-check, mixing, factorize, truncate
  std::optional<std::string> graph_path;
  std::optional<std::string> potential_path;
  std::optional<std::string> manifest_path;
  std::map<std::string, std::string> params;
  std::size_t threads = 1;
};

enum ExitStatus : int { kOk = 0, kInputError = 1, kInvariantViolation = 2 };

/// Runs one command. The report goes to params["output_path"] when set and to
/// `out` otherwise; diagnostics go to `err`. Returns an ExitStatus.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace thermoshift

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entcost/ef_variational.hpp"
#include "entcost/io.hpp"

namespace entcost::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegativeVerdict = 1,
  kInputError = 2,
  kInvariantViolation = 3,
  kIndeterminate = 4,
};

inline constexpr int kSchemaVersion = 1;

struct RunReport {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds; kept out of the JSON document
  int exit_code = kSuccess;

  /// {"schema", "command", "seed", "inputs", "outputs"} in that order.
  Json to_json() const;
};

/// Thrown by command drivers for out-of-range arguments.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Table of (p, Ec, Ed, Ef, Ec - Ed); a single p, or `grid` evenly spaced
/// points on [0, 1/2] inclusive.
RunReport cmd_bell_mix(std::optional<double> p, std::optional<int> grid);

/// Basis check, constant-entanglement verdict, EB certificate and the
/// resulting Ef / Ec claims for a worked example subspace.
RunReport cmd_example(int id, std::uint64_t seed, bool literal_basis = false);

RunReport cmd_ef(const std::string& input_path, const OptimizerConfig& cfg);

RunReport cmd_additivity(double p, double q, const OptimizerConfig& cfg);

/// Exactly one of example_id / choi_path must be set.
RunReport cmd_eb(std::optional<int> example_id, std::optional<std::string> choi_path);

/// CSV rendering; tables become rows, other outputs become key,value lines.
/// Numbers use 9 significant digits.
std::string to_csv(const RunReport& report);

/// Full command-line driver: `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entcost::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbm/aw_assembly.hpp"
#include "gbm/error.hpp"

namespace gbm::harness {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_mismatch = 2, exit_inconclusive = 3, exit_model = 4 };

int exit_code(Verdict v) noexcept;
/// model_consistency -> 4, inconsistency -> 3, anything else -> 1
int exit_code(Errc c) noexcept;

struct ExperimentConfig {
  std::string command;
  /// metric (verify-closed) or model (exhaust, model-check)
  std::string target;
  std::map<std::string, double> params;
  std::string polygon;
  std::vector<double> eps;
  std::vector<double> cutoffs;
  std::optional<int> order;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  // chi
  std::string family;
  std::optional<int> g;
  std::optional<int> n;
  std::optional<int> upto;
  std::optional<std::string> expect;

  std::string format = "json";
  std::string out;

  /// quadrature spec for an n-dimensional integrand, or nothing when no
  /// quadrature flag was given
  std::optional<QuadratureSpec> quad_for(int dimension) const;
  nlohmann::ordered_json echo() const;
};

struct Report {
  nlohmann::ordered_json json;
  int exit = exit_ok;
};

Report cmd_verify_closed(const ExperimentConfig& c);
Report cmd_polygon(const ExperimentConfig& c);
Report cmd_exhaust(const ExperimentConfig& c);
Report cmd_chi(const ExperimentConfig& c);
Report cmd_model_check(const ExperimentConfig& c);

/// "command", "config_echo", "rows", "summary", "verdict", "versions", and
/// last "timestamp" {utc, runtime_ms}, the only field that changes between runs.
std::string render_json(const nlohmann::ordered_json& report);
/// rows only, one column per key seen, in first-seen order
std::string render_csv(const nlohmann::ordered_json& report);

/// Full command line: parse, apply the --config file underneath the flags,
/// run, write the report to --out or `out`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gbm::harness

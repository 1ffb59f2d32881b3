#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lure/gamma.hpp"
#include "lure/problems.hpp"
#include "lure/sda.hpp"

namespace lure {

enum class Command { solve, bench_p1, bench_p3, compare, gamma_report };
enum class Method { sda_l, rs, rn };
enum class Format { csv, md };

std::string to_string(Command c);
std::string to_string(Method m);
Method parse_method(const std::string& name);

struct RunConfig {
  Command command = Command::solve;
  std::vector<ProblemSpec> problems;
  std::vector<Method> methods{Method::sda_l};
  std::vector<double> eps;
  std::optional<double> gamma;
  std::optional<GammaBracket> gamma_bracket;
  SdaOptions sda;
  double rank_tol = 1e-10;
  Format format = Format::csv;
  std::string output;  // empty: standard output
  bool timing = false;
  /// 0 picks the hardware concurrency, capped by LURE_WORKERS.
  unsigned workers = 0;

  /// Throws InvalidArgument when the config cannot be run.
  void validate() const;
};

struct ReportRow {
  std::string problem;
  Index n = 0;
  Index m = 0;
  std::string method;
  std::optional<double> eps;
  std::optional<double> gamma;
  std::optional<int> iterations;
  /// Residual, forward error, or f(gamma); absent for a star row.
  std::optional<double> metric;
  std::optional<double> seconds;
  std::string note;

  bool star() const { return !metric.has_value(); }
};

/// Rows in config order: for each problem, SDA-L once and each regularized
/// method once per eps.
std::vector<ReportRow> run_rows(const RunConfig& config);

std::string emit_table(const std::vector<ReportRow>& rows, Format format, bool timing = false);

/// Runs the config, writes the report, and returns the exit code
/// (0 all ok, 2 some star row).
int run(const RunConfig& config);

/// Worker count after applying the LURE_WORKERS cap.
unsigned worker_count(unsigned requested, std::size_t jobs);

}  // namespace lure

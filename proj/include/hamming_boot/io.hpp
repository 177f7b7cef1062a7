#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hamming_boot/analytics.hpp"
#include "hamming_boot/montecarlo.hpp"

namespace hamming_boot {

/// One CSV/JSON result line. Column order is fixed; decimals are written
/// with 17 significant digits, rationals as "num/den". alpha and a are
/// empty for raw-p runs.
struct ResultRow {
  int d = 0;
  int64_t n = 0;
  int theta = 0;
  std::string alpha;  // "num/den" or empty
  std::optional<double> a;
  double p = 0.0;
  std::string event;
  int64_t replicas = 0;
  int64_t successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  uint64_t seed = 0;
  double mean_rounds = 0.0;

  bool operator==(const ResultRow&) const = default;
};

std::vector<ResultRow> rows_from_report(const EstimateReport& report);

std::string format_double(double value);  // %.17g

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_rows_json(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_rows_csv(std::istream& in);

/// Writes rows to `path` ("-" for stdout) in the requested format
/// ("csv" or "json"). IO failure -> ResourceError.
void write_results(const std::vector<ResultRow>& rows, const std::string& path,
                   const std::string& format);

/// Streaming CSV writer for sweeps: header up front, one flushed row batch
/// per completed grid point.
class CsvStreamWriter {
 public:
  CsvStreamWriter(const std::string& path, std::ostream* fallback_stdout);
  ~CsvStreamWriter();
  void append(const std::vector<ResultRow>& rows);

 private:
  std::ostream* out_;
  void* owned_;  // std::ofstream when writing to a file
  bool wrote_header_ = false;
};

/// Declarative run description: one simulate/sweep payload, output path and
/// format. Round-trips losslessly through JSON; unknown fields are rejected.
struct RunConfig {
  std::string command = "simulate";  // simulate | sweep
  int d = 2;
  int64_t n = 2;
  int theta = 1;
  std::optional<double> p;
  std::optional<double> a;
  std::optional<std::string> alpha;  // rational or decimal text
  std::vector<std::string> events{"spanned"};
  int64_t replicas = 1;
  uint64_t seed = 0;
  double ci_level = 0.99;
  std::vector<int64_t> n_values;          // sweep
  std::vector<double> a_values;           // sweep (vary a)
  std::vector<std::string> alpha_values;  // sweep (vary alpha)
  std::string output = "-";
  std::string format = "csv";
  int verbosity = 1;

  bool operator==(const RunConfig&) const = default;
};

RunConfig read_config(const std::string& path);
RunConfig parse_config_json(const std::string& text);
std::string config_to_json(const RunConfig& config);
void write_config(const RunConfig& config, const std::string& path);

ExperimentSpec experiment_from_config(const RunConfig& config);
SweepSpec sweep_from_config(const RunConfig& config);

/// Configuration file for the detect subcommand:
/// {"d":3,"n":8,"theta":3,"open":[[1,2,3],...]} with 1-based coordinates.
Configuration read_configuration_file(const std::string& path);

/// Exponent-table CSV: d,theta,lower,upper,upper_source with exact
/// rationals.
void write_exponent_table_csv(std::ostream& out,
                              const std::vector<ExponentBounds>& rows);

/// Figure series CSV: theta,alpha,bound_type,value.
void write_figure_csv(std::ostream& out, const std::vector<FigurePoint>& points);

}  // namespace hamming_boot

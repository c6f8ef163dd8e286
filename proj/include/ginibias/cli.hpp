#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ginibias/montecarlo.hpp"

namespace ginibias::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kParameterError = 2,
  kConvergenceError = 3,
  kConfigError = 4,
  kDataError = 5,
};

// ---------------------------------------------------------------------------
// Config files
//
//   # comment
//   family = poisson            # poisson | geometric | gamma
//   params = 0.5, 1, 2, 5, 10   # lambda, p, or gamma shape alpha
//   rate = 1                    # gamma rate lambda (gamma only, default 1)
//   n = 25, 50, 75, 100
//   replications = 10000
//   seed = 20251016
//   clip_corrected = false
// ---------------------------------------------------------------------------

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& field,
              const std::string& message);
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

MCConfig parse_config(std::istream& in, const std::string& source = "<config>");
MCConfig load_config(const std::filesystem::path& path);

/// Canonical "key=value" text of a parsed config; the digest input.
std::string canonical_config(const MCConfig& config);
/// 64-bit FNV-1a of canonical_config, as 16 lowercase hex digits.
std::string config_digest(const MCConfig& config);

struct RunManifest {
  std::string command;
  std::string config_digest;
  std::string tool_version;
  std::uint64_t base_seed;
  std::string timestamp;  // UTC ISO-8601
};

std::string utc_timestamp();
std::string manifest_json(const RunManifest& manifest, const MCConfig& config, unsigned threads);

// ---------------------------------------------------------------------------
// mc_results.csv
// ---------------------------------------------------------------------------

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kResultsHeader =
    "family,param,n,estimator,relbias,rmse,mc_se,degenerate_count,seed_digest";

struct ResultRow {
  std::string family;
  double param;
  int n;
  std::string estimator;  // "uncorrected" | "corrected"
  double relbias;
  double rmse;
  double mc_se;
  std::size_t degenerate_count;
  std::string seed_digest;
};

/// Ten significant digits, shortest form.
std::string format_number(double value);
std::string hex64(std::uint64_t value);

std::vector<ResultRow> result_rows(const MCReport& report);
void write_results_csv(std::ostream& out, const MCReport& report);
/// Throws DataError on an empty file, a wrong header or a malformed row.
std::vector<ResultRow> read_results_csv(std::istream& in);

// ---------------------------------------------------------------------------
// SVG charts
// ---------------------------------------------------------------------------

enum class Panel { relbias_n, rmse_n, relbias_param, rmse_param };

std::optional<Panel> parse_panel(std::string_view name);
std::string_view to_string(Panel panel);

struct Chart {
  std::string svg;
  std::size_t series = 0;
  std::size_t points_per_series = 0;  // maximum over series
};

/// Line chart of one panel: one series per (held value, estimator), x sorted
/// ascending. Throws DataError if the rows are empty or mix families.
Chart render_chart(const std::vector<ResultRow>& rows, Panel panel);

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ginibias::cli

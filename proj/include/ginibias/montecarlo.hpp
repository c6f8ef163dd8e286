#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ginibias/distributions.hpp"
#include "ginibias/quadrature.hpp"

namespace ginibias {

/// One simulation study: a family, a parameter grid and a sample-size grid.
/// For gamma the grid holds shapes and `gamma_rate` is fixed.
struct MCConfig {
  Family family = Family::poisson;
  std::vector<double> params;
  std::vector<int> sample_sizes;
  std::size_t replications = 10000;
  std::uint64_t base_seed = 0;
  double gamma_rate = 1.0;
  bool clip_corrected = false;

  /// Throws DomainError on empty grids, R < 1, n < 2, or parameters outside
  /// the family's domain.
  void validate() const;
  Model model(std::size_t param_index) const;
};

struct EstimatorStats {
  double mean = 0.0;     // (1/R) sum G^_r
  double relbias = 0.0;  // (1/R) sum (G^_r - G) / G
  double rmse = 0.0;     // sqrt((1/R) sum (G^_r - G)^2)
  double mc_se = 0.0;    // sample sd of G^_r / sqrt(R); 0 when R = 1
};

struct CellReport {
  Family family;
  std::size_t param_index;
  double param;
  int n;
  std::size_t replications;
  double gini;                  // population G
  double analytic_expectation;  // E[G^] from the expectation module
  std::size_t degenerate_count;  // all-zero samples
  std::uint64_t seed_digest;     // root seed of the cell
  bool extension;                // gamma cells are not part of the original study
  EstimatorStats uncorrected;
  EstimatorStats corrected;
};

struct MCReport {
  /// Cells ordered by (param_index, n index).
  std::vector<CellReport> cells;
};

/// Seed of replication r in a cell; independent of scheduling.
std::uint64_t replication_seed(std::uint64_t base_seed, Family family, std::size_t param_index,
                               int n, std::size_t replication);
/// Root seed of a cell (reported as seed_digest).
std::uint64_t cell_seed(std::uint64_t base_seed, Family family, std::size_t param_index, int n);

/// Floors used for the plug-in when a replication is all zeros.
inline constexpr double kDegenerateRateFloor = 1e-8;        // lambda^
inline constexpr double kDegenerateSuccessCeiling = 1 - 1e-8;  // p^

/// Runs every cell of the config. threads = 0 uses hardware concurrency.
/// Output is bitwise independent of the thread count.
MCReport run_mc(const MCConfig& config, unsigned threads = 0,
                const QuadratureSettings& settings = {});

enum class SummaryAxis { by_n, by_param };

struct SummaryRow {
  double x;     // n or parameter, along the chosen axis
  double held;  // the other coordinate (parameter or n)
  double relbias_uncorrected;
  double relbias_corrected;
  double rmse_uncorrected;
  double rmse_corrected;
};

/// Rows along `axis`, one series per value of the other coordinate, sorted by
/// (held, x). `held` restricts the output to one series.
std::vector<SummaryRow> summarize(const MCReport& report, SummaryAxis axis,
                                  std::optional<double> held = std::nullopt);

}  // namespace ginibias

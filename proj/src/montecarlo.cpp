#include "ginibias/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>

#include "ginibias/errors.hpp"
#include "ginibias/expectation.hpp"
#include "ginibias/gini.hpp"
#include "ginibias/rng.hpp"

namespace ginibias {

void MCConfig::validate() const {
  if (params.empty()) throw DomainError("mc config: parameter grid is empty");
  if (sample_sizes.empty()) throw DomainError("mc config: sample-size grid is empty");
  if (replications < 1) throw DomainError("mc config: replications must be >= 1");
  for (int n : sample_sizes) {
    if (n < 2) throw DomainError("mc config: every sample size must be >= 2");
  }
  for (std::size_t i = 0; i < params.size(); ++i) (void)model(i);
}

Model MCConfig::model(std::size_t param_index) const {
  const double value = params.at(param_index);
  switch (family) {
    case Family::poisson:
      return Model::poisson(value);
    case Family::geometric:
      return Model::geometric(value);
    case Family::gamma:
      return Model::gamma(value, gamma_rate);
  }
  throw std::logic_error("unreachable");
}

std::uint64_t cell_seed(std::uint64_t base_seed, Family family, std::size_t param_index, int n) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(family), param_index,
                                 static_cast<std::uint64_t>(n)});
}

std::uint64_t replication_seed(std::uint64_t base_seed, Family family, std::size_t param_index,
                               int n, std::size_t replication) {
  return derive_seed(cell_seed(base_seed, family, param_index, n), {replication});
}

namespace {

// Runs body(i) for i in [0, count) on `threads` workers. The first exception
// thrown by any worker is rethrown on the caller's thread.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        while (!failed.load(std::memory_order_relaxed)) {
          const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= count) return;
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

struct CellWork {
  std::size_t param_index;
  int n;
  Model model;
  std::vector<double> ghat;
  std::vector<double> sums;
  std::map<double, double> plug_in;  // sample sum -> Bias_n(theta^)
};

EstimatorStats summarize_estimator(const std::vector<double>& values, double gini) {
  const double r = static_cast<double>(values.size());
  double sum = 0.0;
  double rel = 0.0;
  double sq = 0.0;
  for (double v : values) {
    sum += v;
    rel += (v - gini) / gini;
    sq += (v - gini) * (v - gini);
  }
  EstimatorStats s;
  s.mean = sum / r;
  s.relbias = rel / r;
  s.rmse = std::sqrt(sq / r);
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.mc_se = std::sqrt(ss / (r - 1.0)) / std::sqrt(r);
  }
  return s;
}

double degenerate_bias(Family family, int n, const QuadratureSettings& settings) {
  switch (family) {
    case Family::poisson:
      return bias(Model::poisson(kDegenerateRateFloor), n, settings).bias;
    case Family::geometric:
      return bias(Model::geometric(kDegenerateSuccessCeiling), n, settings).bias;
    case Family::gamma:
      return 0.0;
  }
  throw std::logic_error("unreachable");
}

constexpr std::size_t kChunk = 64;

}  // namespace

MCReport run_mc(const MCConfig& config, unsigned threads, const QuadratureSettings& settings) {
  config.validate();
  settings.validate();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<CellWork> cells;
  for (std::size_t pi = 0; pi < config.params.size(); ++pi) {
    for (int n : config.sample_sizes) {
      cells.push_back({pi, n, config.model(pi), std::vector<double>(config.replications),
                       std::vector<double>(config.replications), {}});
    }
  }

  // Phase 1: draw samples and evaluate G^. Each replication owns its seed and
  // its output slot, so scheduling cannot change the result.
  const std::size_t chunks_per_cell = (config.replications + kChunk - 1) / kChunk;
  parallel_for(cells.size() * chunks_per_cell, threads, [&](std::size_t job) {
    CellWork& cell = cells[job / chunks_per_cell];
    const std::size_t begin = (job % chunks_per_cell) * kChunk;
    const std::size_t end = std::min(begin + kChunk, config.replications);
    for (std::size_t r = begin; r < end; ++r) {
      const std::uint64_t seed =
          replication_seed(config.base_seed, config.family, cell.param_index, cell.n, r);
      const Sample s = sample(cell.model, static_cast<std::size_t>(cell.n), seed);
      cell.ghat[r] = estimate_gini(s).value;
      cell.sums[r] = s.sum();
    }
  });

  // Phase 2: the plug-in bias depends on the sample only through its sum, so
  // evaluate it once per distinct sum.
  if (config.family != Family::gamma) {
    parallel_for(cells.size(), threads, [&](std::size_t c) {
      CellWork& cell = cells[c];
      for (double s : cell.sums) cell.plug_in.emplace(s, 0.0);
      for (auto& [s, b] : cell.plug_in) {
        b = s == 0.0 ? degenerate_bias(config.family, cell.n, settings)
                     : plug_in_bias(config.family, s / cell.n, cell.n, settings);
      }
    });
  }

  MCReport report;
  report.cells.reserve(cells.size());
  for (const CellWork& cell : cells) {
    const double g = gini_exact(cell.model);
    std::vector<double> corrected(cell.ghat.size());
    std::size_t degenerate = 0;
    for (std::size_t r = 0; r < cell.ghat.size(); ++r) {
      if (cell.sums[r] == 0.0) ++degenerate;
      double c = cell.ghat[r];
      if (config.family != Family::gamma) c -= cell.plug_in.at(cell.sums[r]);
      if (config.clip_corrected) c = std::clamp(c, 0.0, 1.0);
      corrected[r] = c;
    }
    CellReport out{config.family,
                   cell.param_index,
                   config.params[cell.param_index],
                   cell.n,
                   config.replications,
                   g,
                   expected_ghat(cell.model, cell.n, settings).value,
                   degenerate,
                   cell_seed(config.base_seed, config.family, cell.param_index, cell.n),
                   config.family == Family::gamma,
                   summarize_estimator(cell.ghat, g),
                   summarize_estimator(corrected, g)};
    report.cells.push_back(out);
  }
  return report;
}

std::vector<SummaryRow> summarize(const MCReport& report, SummaryAxis axis,
                                  std::optional<double> held) {
  std::vector<SummaryRow> rows;
  for (const CellReport& c : report.cells) {
    const double n = c.n;
    const double x = axis == SummaryAxis::by_n ? n : c.param;
    const double other = axis == SummaryAxis::by_n ? c.param : n;
    if (held && std::abs(*held - other) > 1e-12 * std::max(1.0, std::abs(other))) continue;
    rows.push_back({x, other, c.uncorrected.relbias, c.corrected.relbias, c.uncorrected.rmse,
                    c.corrected.rmse});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
    return std::tie(a.held, a.x) < std::tie(b.held, b.x);
  });
  return rows;
}

}  // namespace ginibias

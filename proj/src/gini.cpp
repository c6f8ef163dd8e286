#include "ginibias/gini.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ginibias/errors.hpp"

namespace ginibias {
namespace {

// binom(n, 2); the single divisor used by both estimator paths.
double pair_count(std::size_t n) {
  const double nd = static_cast<double>(n);
  return 0.5 * nd * (nd - 1.0);
}

GiniEstimate finish(double pair_sum, const Sample& sample) {
  const std::size_t n = sample.size();
  if (sample.sum() == 0.0) return {0.0, n, true};
  const double mean_difference = pair_sum / pair_count(n);
  return {mean_difference / (2.0 * sample.mean()), n, false};
}

class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

GiniEstimate estimate_gini(const Sample& sample) {
  std::vector<double> sorted(sample.values().begin(), sample.values().end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<std::ptrdiff_t>(sorted.size());
  CompensatedSum pair_sum;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    // 1-based rank i+1: coefficient 2(i+1) - n - 1.
    pair_sum.add(static_cast<double>(2 * i + 1 - n) * sorted[static_cast<std::size_t>(i)]);
  }
  return finish(pair_sum.value(), sample);
}

GiniEstimate estimate_gini_naive(const Sample& sample) {
  const auto x = sample.values();
  CompensatedSum pair_sum;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      pair_sum.add(std::abs(x[i] - x[j]));
    }
  }
  return finish(pair_sum.value(), sample);
}

double gini_from_cdf(const std::function<double(double)>& cdf, double mean, Support support,
                     double upper, const QuadratureSettings& settings) {
  if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("gini_from_cdf: mean must be positive");
  if (!(upper >= 0.0) || !std::isfinite(upper)) throw DomainError("gini_from_cdf: upper must be >= 0");

  if (support == Support::discrete) {
    const auto last = static_cast<long long>(std::floor(upper));
    CompensatedSum total;
    for (long long k = 0; k <= last; ++k) {
      const double f = cdf(static_cast<double>(k));
      total.add(f * (1.0 - f));
    }
    return total.value() / mean;
  }

  const QuadratureResult r = integrate([&](double x) {
    const double f = cdf(x);
    return f * (1.0 - f);
  }, 0.0, upper, settings);
  if (!r.converged) throw ConvergenceError("gini_from_cdf: quadrature did not converge");
  return r.value / mean;
}

}  // namespace ginibias

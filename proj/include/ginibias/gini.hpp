#pragma once

#include <cstddef>
#include <functional>

#include "ginibias/quadrature.hpp"
#include "ginibias/sample.hpp"

namespace ginibias {

/// Value of the upward-adjusted Gini estimator
///
///   G^ = [ binom(n,2)^-1 sum_{i<j} |X_i - X_j| ] / (2 Xbar),
///
/// with G^ = 0 when every observation is zero.
struct GiniEstimate {
  double value = 0.0;
  std::size_t n = 0;
  bool degenerate = false;  // sum of the sample is zero
};

/// O(n log n): sum_{i<j} |x_i - x_j| = sum_i (2i - n - 1) x_(i) over the
/// sorted values, accumulated with compensated summation.
GiniEstimate estimate_gini(const Sample& sample);

/// Reference O(n^2) pair loop. Shares the pair divisor with estimate_gini.
GiniEstimate estimate_gini_naive(const Sample& sample);

enum class Support { discrete, continuous };

/// Population Gini from a CDF:
///   discrete:   sum_{k=0}^{upper} F(k)(1 - F(k)) / mean
///   continuous: int_0^upper F(x)(1 - F(x)) dx / mean   (adaptive quadrature)
/// The caller picks `upper` so that the neglected tail is below 1e-12.
/// Throws DomainError if mean <= 0 or upper < 0, ConvergenceError if the
/// quadrature fails.
double gini_from_cdf(const std::function<double(double)>& cdf, double mean, Support support,
                     double upper, const QuadratureSettings& settings = {1e-13, 1e-12, 60});

}  // namespace ginibias

#pragma once

namespace ginibias::specfun {

/// Outcome of a truncated power series.
struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;
  bool converged = false;
};

/// Largest argument accepted by the Bessel routines. There is no
/// asymptotic branch; larger arguments are a DomainError.
inline constexpr double kMaxBesselArgument = 40.0;

/// Modified Bessel function of the first kind, order 0, by its power series.
/// Throws DomainError unless 0 <= x <= kMaxBesselArgument.
SeriesResult bessel_i0_series(double x);
double bessel_i0(double x);

/// Modified Bessel function of the first kind, order 1.
SeriesResult bessel_i1_series(double x);
double bessel_i1(double x);

/// 2F1(1, n; n+1; z) = sum_k n/(n+k) z^k for integer n >= 1 and 0 <= z < 1.
SeriesResult gauss_2f1_1n_series(int n, double z);

/// As gauss_2f1_1n_series, throwing ConvergenceError if the term cap is hit.
double gauss_2f1_1n(int n, double z);

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine coefficients).
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
/// Series below x = a + 1, Lentz continued fraction above.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly on the continued-fraction side to keep tail accuracy.
double regularized_gamma_q(double a, double x);

}  // namespace ginibias::specfun

#pragma once

#include <cstdint>
#include <string_view>

#include "ginibias/distributions.hpp"
#include "ginibias/quadrature.hpp"
#include "ginibias/sample.hpp"

namespace ginibias {

enum class ExpectationMethod {
  generic_quadrature,  // tilting representation, any family
  poisson_integral,    // w-integral with Bessel integrand
  geometric_closed,    // finite partial-fraction sum
  geometric_2f1,       // hypergeometric expression (comparison only)
  geometric_integral,  // direct w-integral by quadrature
  gamma_closed,        // E[G^] = G
};

std::string_view to_string(ExpectationMethod method);

struct ExpectationResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  ExpectationMethod method = ExpectationMethod::generic_quadrature;
};

/// E[G^] for samples of size n via the tilting representation
///
///   E[G^] = n int_0^inf E[Y_z] G(Y_z) L_X(z)^n dz,
///
/// evaluated with z = t / E[X], t = s / (1 - s) on s in [0, 1). Only
/// tilt/mean/gini_exact/laplace are used, so any family works.
/// Throws ConvergenceError if the quadrature does not converge.
ExpectationResult expected_ghat_generic(const Model& model, int n,
                                        const QuadratureSettings& settings = {});

/// Poisson(lambda):
///   E[G^] = n lambda e^{-n lambda} int_0^1 e^{(n-2) lambda w} [I0(2 lambda w) + I1(2 lambda w)] dw,
/// integrated in the overflow-free form
///   n lambda int_0^1 e^{-n lambda (1-w)} e^{-2 lambda w}[I0 + I1](2 lambda w) dw.
/// Requires 0 < lambda <= 20 (Bessel argument limit).
ExpectationResult poisson_expected_ghat(double lambda, int n,
                                        const QuadratureSettings& settings = {});

/// Geometric(p) on {0,1,...}, exact:
///   E[G^] = n sum_{k=0}^{n-1} 2^{-k-1} (p^k - p^n) / (n - k)
///         + n p^n 2^{-n-1} ln((2 - p) / p).
ExpectationResult geometric_expected_ghat(double p, int n);

/// Direct quadrature of n p^n int_0^{1-p} (1-w)^{-(n+1)} (1+w)^{-1} dw.
ExpectationResult geometric_expected_ghat_integral(double p, int n,
                                                   const QuadratureSettings& settings = {});

/// The hypergeometric expression 1/2 [2F1(1,n;n+1;p/2) - p^n 2F1(1,n;n+1;1/2)].
/// Does NOT equal E[G^] (it undershoots by O(1/n)); kept so the discrepancy
/// stays measurable.
ExpectationResult geometric_expected_ghat_hypergeometric(double p, int n);

/// Family fast path: poisson_expected_ghat, geometric_expected_ghat, or G for gamma.
ExpectationResult expected_ghat(const Model& model, int n, const QuadratureSettings& settings = {});

struct BiasReport {
  Model model;
  int n;
  double gini;
  double expectation;
  double bias;  // expectation - gini
  double lower_bound;
  double upper_bound;
  double abs_error_estimate;
  ExpectationMethod method;
};

/// Bias E[G^] - G with analytic bounds:
///   Poisson n != 2: [(e^{-2l} - e^{-nl})/(1 - 2/n) - G, ((1 - e^{-(n-2)l})/(1 - 2/n) - 1) G]
///   Poisson n == 2: [2 l e^{-2l} - G, (2 l - 1) G]   (n -> 2 limit of the above)
///   Geometric:      [-p^n G, 1 - p^n - G]
///   Gamma:          [0, 0]
BiasReport bias(const Model& model, int n, const QuadratureSettings& settings = {});

/// Exact E[G^] by enumerating every tuple in {0..K}^n (n in {2, 3}) of a
/// discrete model. Independent of the tilting machinery.
/// Throws std::invalid_argument if (K+1)^n > 1e8, or if n P(X > K) >= 1e-12.
double brute_force_expected_ghat(const Model& model, int n, std::int64_t truncation);

/// Bias_n(theta^) for the ML plug-in computed from the sample mean:
/// lambda^ = xbar (Poisson), p^ = 1 / (1 + xbar) (geometric), zero for gamma.
double plug_in_bias(Family family, double sample_mean, int n,
                    const QuadratureSettings& settings = {});

/// G^c = G^ - Bias_n(theta^). Not clipped to [0, 1].
/// Throws DomainError for an all-zero sample (ML estimate on the boundary).
double corrected_estimate(const Sample& sample, Family family,
                          const QuadratureSettings& settings = {});

}  // namespace ginibias

#include "ginibias/expectation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ginibias/errors.hpp"
#include "ginibias/gini.hpp"
#include "ginibias/specfun.hpp"

namespace ginibias {
namespace {

void check_n(int n) {
  if (n < 2) throw DomainError("sample size n must be >= 2");
}

double poisson_rate(const Model& m) { return std::get<PoissonParams>(m.params()).rate; }
double geometric_p(const Model& m) { return std::get<GeometricParams>(m.params()).success; }

QuadratureResult require_converged(QuadratureResult r, const std::string& what) {
  if (!r.converged) {
    throw ConvergenceError(what + ": quadrature did not converge (error estimate " +
                           std::to_string(r.abs_error) + ")");
  }
  return r;
}

// Tolerances for an integral that is multiplied by `factor` afterwards.
QuadratureSettings scaled_for(const QuadratureSettings& s, double factor) {
  QuadratureSettings out = s;
  if (factor > 1.0) out.abs_tol = s.abs_tol / factor;
  return out;
}

}  // namespace

std::string_view to_string(ExpectationMethod method) {
  switch (method) {
    case ExpectationMethod::generic_quadrature:
      return "generic_quadrature";
    case ExpectationMethod::poisson_integral:
      return "poisson_integral";
    case ExpectationMethod::geometric_closed:
      return "geometric_closed";
    case ExpectationMethod::geometric_2f1:
      return "geometric_2f1";
    case ExpectationMethod::geometric_integral:
      return "geometric_integral";
    case ExpectationMethod::gamma_closed:
      return "gamma_closed";
  }
  return "unknown";
}

ExpectationResult expected_ghat_generic(const Model& model, int n,
                                        const QuadratureSettings& settings) {
  check_n(n);
  settings.validate();
  // z X is dimensionless, so measure z in units of 1 / E[X]; then
  // t = s / (1 - s) maps [0, inf) onto [0, 1).
  const double z_scale = 1.0 / mean(model);
  const double nd = n;
  const auto integrand = [&](double s) {
    if (s >= 1.0) return 0.0;
    const double one_minus = 1.0 - s;
    const double z = z_scale * s / one_minus;
    const std::optional<Model> tilted = try_tilt(model, z);
    if (!tilted) return 0.0;  // tilted law is a point mass at zero
    const double jacobian = z_scale / (one_minus * one_minus);
    return nd * mean(*tilted) * gini_exact(*tilted) * std::pow(laplace(model, z), nd) * jacobian;
  };
  const QuadratureResult r =
      require_converged(integrate(integrand, 0.0, 1.0, settings), "expected_ghat_generic");
  return {r.value, r.abs_error, ExpectationMethod::generic_quadrature};
}

ExpectationResult poisson_expected_ghat(double lambda, int n, const QuadratureSettings& settings) {
  check_n(n);
  settings.validate();
  if (!(lambda > 0.0) || lambda > 0.5 * specfun::kMaxBesselArgument) {
    throw DomainError("poisson_expected_ghat: lambda must lie in (0, 20]");
  }
  const double nl = n * lambda;
  const auto integrand = [&](double w) {
    const double x = 2.0 * lambda * w;
    const double scaled_bessel = std::exp(-x) * (specfun::bessel_i0(x) + specfun::bessel_i1(x));
    return std::exp(-nl * (1.0 - w)) * scaled_bessel;
  };
  const QuadratureResult r = require_converged(
      integrate(integrand, 0.0, 1.0, scaled_for(settings, nl)), "poisson_expected_ghat");
  return {nl * r.value, nl * r.abs_error, ExpectationMethod::poisson_integral};
}

ExpectationResult geometric_expected_ghat(double p, int n) {
  check_n(n);
  if (!(p > 0.0 && p < 1.0)) throw DomainError("geometric_expected_ghat: p must lie in (0, 1)");
  const double log_p = std::log(p);
  double sum = 0.0;
  double half_power = 0.5;  // 2^{-k-1}
  double p_power = 1.0;     // p^k
  for (int k = 0; k < n; ++k) {
    // p^k - p^n = -p^k expm1((n - k) ln p)
    const double gap = -p_power * std::expm1((n - k) * log_p);
    sum += half_power * gap / (n - k);
    half_power *= 0.5;
    p_power *= p;
  }
  const double tail = std::exp(n * log_p - (n + 1) * std::numbers::ln2) * std::log((2.0 - p) / p);
  return {n * (sum + tail), 0.0, ExpectationMethod::geometric_closed};
}

ExpectationResult geometric_expected_ghat_integral(double p, int n,
                                                   const QuadratureSettings& settings) {
  check_n(n);
  settings.validate();
  if (!(p > 0.0 && p < 1.0)) throw DomainError("geometric_expected_ghat_integral: p must lie in (0, 1)");
  const double log_p = std::log(p);
  const auto integrand = [&](double w) {
    return std::exp(n * log_p - (n + 1) * std::log1p(-w)) / (1.0 + w);
  };
  const QuadratureResult r =
      require_converged(integrate(integrand, 0.0, 1.0 - p, scaled_for(settings, n)),
                        "geometric_expected_ghat_integral");
  return {n * r.value, n * r.abs_error, ExpectationMethod::geometric_integral};
}

ExpectationResult geometric_expected_ghat_hypergeometric(double p, int n) {
  check_n(n);
  if (!(p > 0.0 && p < 1.0)) throw DomainError("geometric_expected_ghat_hypergeometric: p must lie in (0, 1)");
  const double value =
      0.5 * (specfun::gauss_2f1_1n(n, 0.5 * p) - std::pow(p, n) * specfun::gauss_2f1_1n(n, 0.5));
  return {value, 0.0, ExpectationMethod::geometric_2f1};
}

ExpectationResult expected_ghat(const Model& model, int n, const QuadratureSettings& settings) {
  switch (model.family()) {
    case Family::poisson:
      return poisson_expected_ghat(poisson_rate(model), n, settings);
    case Family::geometric:
      return geometric_expected_ghat(geometric_p(model), n);
    case Family::gamma:
      check_n(n);
      return {gini_exact(model), 0.0, ExpectationMethod::gamma_closed};
  }
  throw std::logic_error("unreachable");
}

BiasReport bias(const Model& model, int n, const QuadratureSettings& settings) {
  const ExpectationResult e = expected_ghat(model, n, settings);
  const double g = gini_exact(model);
  double lower = 0.0;
  double upper = 0.0;
  switch (model.family()) {
    case Family::poisson: {
      const double lambda = poisson_rate(model);
      if (n == 2) {
        lower = 2.0 * lambda * std::exp(-2.0 * lambda) - g;
        upper = (2.0 * lambda - 1.0) * g;
      } else {
        const double shrink = 1.0 - 2.0 / n;
        // e^{-2l} - e^{-nl} = -e^{-2l} expm1(-(n-2) l)
        const double rest = -std::expm1(-(n - 2) * lambda);
        lower = std::exp(-2.0 * lambda) * rest / shrink - g;
        upper = (rest / shrink - 1.0) * g;
      }
      break;
    }
    case Family::geometric: {
      const double pn = std::pow(geometric_p(model), n);
      lower = -pn * g;
      upper = 1.0 - pn - g;
      break;
    }
    case Family::gamma:
      break;
  }
  return {model, n, g, e.value, e.value - g, lower, upper, e.abs_error_estimate, e.method};
}

double brute_force_expected_ghat(const Model& model, int n, std::int64_t truncation) {
  if (!model.is_discrete()) throw std::invalid_argument("brute force needs a discrete model");
  if (n != 2 && n != 3) throw std::invalid_argument("brute force supports n in {2, 3}");
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  const double tuples = std::pow(static_cast<double>(truncation + 1), n);
  if (tuples > 1e8) throw std::invalid_argument("brute force refuses more than 1e8 tuples");

  std::vector<double> weight(static_cast<std::size_t>(truncation + 1));
  long double kept = 0.0L;
  for (std::int64_t k = 0; k <= truncation; ++k) {
    weight[static_cast<std::size_t>(k)] = pmf(model, k);
    kept += weight[static_cast<std::size_t>(k)];
  }
  const double tail = static_cast<double>(1.0L - kept);
  if (n * tail >= 1e-12) {
    throw std::invalid_argument("truncation too small: n P(X > K) >= 1e-12");
  }

  const auto statistic = [n](const int* x) {
    double pairs = 0.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      total += x[i];
      for (int j = i + 1; j < n; ++j) pairs += std::abs(x[i] - x[j]);
    }
    if (total == 0.0) return 0.0;
    const double binom = 0.5 * n * (n - 1);
    return (pairs / binom) / (2.0 * total / n);
  };

  long double expectation = 0.0L;
  const int k_max = static_cast<int>(truncation);
  int x[3] = {0, 0, 0};
  if (n == 2) {
    for (x[0] = 0; x[0] <= k_max; ++x[0]) {
      for (x[1] = 0; x[1] <= k_max; ++x[1]) {
        expectation += static_cast<long double>(weight[x[0]]) * weight[x[1]] * statistic(x);
      }
    }
  } else {
    for (x[0] = 0; x[0] <= k_max; ++x[0]) {
      for (x[1] = 0; x[1] <= k_max; ++x[1]) {
        const long double w01 = static_cast<long double>(weight[x[0]]) * weight[x[1]];
        for (x[2] = 0; x[2] <= k_max; ++x[2]) {
          expectation += w01 * weight[x[2]] * statistic(x);
        }
      }
    }
  }
  return static_cast<double>(expectation);
}

double plug_in_bias(Family family, double sample_mean, int n, const QuadratureSettings& settings) {
  if (!(sample_mean > 0.0) || !std::isfinite(sample_mean)) {
    throw DomainError("plug-in bias needs a positive sample mean");
  }
  switch (family) {
    case Family::poisson:
      return bias(Model::poisson(sample_mean), n, settings).bias;
    case Family::geometric:
      return bias(Model::geometric(1.0 / (1.0 + sample_mean)), n, settings).bias;
    case Family::gamma:
      return 0.0;
  }
  throw std::logic_error("unreachable");
}

double corrected_estimate(const Sample& sample, Family family, const QuadratureSettings& settings) {
  const GiniEstimate g = estimate_gini(sample);
  if (g.degenerate) {
    throw DomainError("corrected_estimate: all-zero sample puts the ML estimate on the boundary");
  }
  return g.value - plug_in_bias(family, sample.mean(), static_cast<int>(sample.size()), settings);
}

}  // namespace ginibias

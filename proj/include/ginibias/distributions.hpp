#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ginibias/sample.hpp"

namespace ginibias {

enum class Family { poisson, geometric, gamma };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

/// Poisson(rate).
struct PoissonParams {
  double rate;
  friend bool operator==(const PoissonParams&, const PoissonParams&) = default;
};

/// Geometric on {0, 1, 2, ...} with P(X = k) = p (1 - p)^k. Both p and
/// q = 1 - p are carried so that tilting (which shrinks q) loses no
/// precision when p approaches 1.
struct GeometricParams {
  double success;  // p
  double failure;  // q = 1 - p
  friend bool operator==(const GeometricParams&, const GeometricParams&) = default;
};

/// Gamma(shape, rate), density rate^shape x^(shape-1) e^(-rate x) / Gamma(shape).
struct GammaParams {
  double shape;
  double rate;
  friend bool operator==(const GammaParams&, const GammaParams&) = default;
};

/// A population X from one of the three supported families. Parameters are
/// always strictly inside their open domains.
class Model {
 public:
  using Params = std::variant<PoissonParams, GeometricParams, GammaParams>;

  /// Factories throw DomainError on boundary or non-finite parameters.
  static Model poisson(double rate);
  static Model geometric(double success_prob);
  static Model geometric_from_failure(double failure_prob);
  static Model gamma(double shape, double rate);

  Family family() const noexcept;
  bool is_discrete() const noexcept { return family() != Family::gamma; }
  const Params& params() const noexcept { return params_; }

  /// "poisson(lambda=2)", "geometric(p=0.5)", "gamma(alpha=2, lambda=1)".
  std::string describe() const;

  friend bool operator==(const Model&, const Model&) = default;

 private:
  explicit Model(Params params) : params_(params) {}
  Params params_;
};

double mean(const Model& model);

/// E[exp(-z X)]. Throws DomainError for z < 0.
double laplace(const Model& model, double z);

/// P(X <= x). Zero for x < 0.
double cdf(const Model& model, double x);

/// P(X = k) for the discrete families; DomainError for gamma.
double pmf(const Model& model, std::int64_t k);

/// Exponentially tilted model Y_z with F_{Y_z}(t) = E[e^{-zX} 1{X <= t}] / L(z):
/// Poisson(lambda e^-z), Geometric(1 - (1-p) e^-z), Gamma(alpha, lambda + z).
/// Throws DomainError for z < 0, or when the tilted parameter underflows to
/// the boundary (the tilted law collapses onto zero).
Model tilt(const Model& model, double z);

/// As tilt, but returns nullopt instead of throwing when the tilted law
/// collapses onto zero.
std::optional<Model> try_tilt(const Model& model, double z);

/// Closed-form population Gini:
///   Poisson   e^{-2 lambda} [I0(2 lambda) + I1(2 lambda)]   (lambda <= 20)
///   Geometric 1 / (2 - p)
///   Gamma     Gamma(2 alpha + 1) / (2^{2 alpha} Gamma(alpha + 1)^2)
double gini_exact(const Model& model);

/// Population Gini from the CDF characterization: a truncated series over
/// the integers for the discrete families, quadrature of F(1 - F) for gamma.
double gini_series(const Model& model);

/// n i.i.d. draws fully determined by (model, n, seed). Poisson by
/// sequential CDF inversion, geometric by floor(ln U / ln(1 - p)), gamma by
/// Marsaglia-Tsang squeeze rejection. Throws std::invalid_argument for n < 2.
Sample sample(const Model& model, std::size_t n, std::uint64_t seed);

}  // namespace ginibias

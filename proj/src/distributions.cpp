#include "ginibias/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ginibias/errors.hpp"
#include "ginibias/gini.hpp"
#include "ginibias/rng.hpp"
#include "ginibias/specfun.hpp"

namespace ginibias {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool open_positive(double x) { return std::isfinite(x) && x > 0.0; }
bool open_unit(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

void check_z(double z, const char* what) {
  if (std::isnan(z) || z < 0.0) {
    throw DomainError(std::string(what) + ": z must be >= 0");
  }
}

// ln(1 - p) without cancellation at either end of (0, 1).
double log_failure(const GeometricParams& g) {
  return g.success < 0.5 ? std::log1p(-g.success) : std::log(g.failure);
}

// P(X > x).
double survival(const Model& model, double x) {
  if (x < 0.0) return 1.0;
  return std::visit(
      Overloaded{
          [&](const PoissonParams& p) {
            return specfun::regularized_gamma_p(std::floor(x) + 1.0, p.rate);
          },
          [&](const GeometricParams& g) { return std::exp((std::floor(x) + 1.0) * log_failure(g)); },
          [&](const GammaParams& g) { return specfun::regularized_gamma_q(g.shape, g.rate * x); },
      },
      model.params());
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::poisson:
      return "poisson";
    case Family::geometric:
      return "geometric";
    case Family::gamma:
      return "gamma";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "poisson") return Family::poisson;
  if (name == "geometric") return Family::geometric;
  if (name == "gamma") return Family::gamma;
  return std::nullopt;
}

Model Model::poisson(double rate) {
  if (!open_positive(rate)) throw DomainError("poisson: rate must be positive and finite");
  return Model(PoissonParams{rate});
}

Model Model::geometric(double success_prob) {
  if (!open_unit(success_prob)) throw DomainError("geometric: p must lie in (0, 1)");
  return Model(GeometricParams{success_prob, 1.0 - success_prob});
}

Model Model::geometric_from_failure(double failure_prob) {
  if (!open_unit(failure_prob)) throw DomainError("geometric: 1 - p must lie in (0, 1)");
  return Model(GeometricParams{1.0 - failure_prob, failure_prob});
}

Model Model::gamma(double shape, double rate) {
  if (!open_positive(shape)) throw DomainError("gamma: shape must be positive and finite");
  if (!open_positive(rate)) throw DomainError("gamma: rate must be positive and finite");
  return Model(GammaParams{shape, rate});
}

Family Model::family() const noexcept {
  return std::visit(Overloaded{
                        [](const PoissonParams&) { return Family::poisson; },
                        [](const GeometricParams&) { return Family::geometric; },
                        [](const GammaParams&) { return Family::gamma; },
                    },
                    params_);
}

std::string Model::describe() const {
  std::ostringstream os;
  os.precision(10);
  std::visit(Overloaded{
                 [&](const PoissonParams& p) { os << "poisson(lambda=" << p.rate << ")"; },
                 [&](const GeometricParams& g) { os << "geometric(p=" << g.success << ")"; },
                 [&](const GammaParams& g) {
                   os << "gamma(alpha=" << g.shape << ", lambda=" << g.rate << ")";
                 },
             },
             params_);
  return os.str();
}

double mean(const Model& model) {
  return std::visit(Overloaded{
                        [](const PoissonParams& p) { return p.rate; },
                        [](const GeometricParams& g) { return g.failure / g.success; },
                        [](const GammaParams& g) { return g.shape / g.rate; },
                    },
                    model.params());
}

double laplace(const Model& model, double z) {
  check_z(z, "laplace");
  return std::visit(
      Overloaded{
          [&](const PoissonParams& p) { return std::exp(p.rate * std::expm1(-z)); },
          [&](const GeometricParams& g) { return g.success / (1.0 - g.failure * std::exp(-z)); },
          [&](const GammaParams& g) { return std::exp(-g.shape * std::log1p(z / g.rate)); },
      },
      model.params());
}

double pmf(const Model& model, std::int64_t k) {
  return std::visit(
      Overloaded{
          [&](const PoissonParams& p) {
            if (k < 0) return 0.0;
            const double kd = static_cast<double>(k);
            return std::exp(kd * std::log(p.rate) - p.rate - specfun::ln_gamma(kd + 1.0));
          },
          [&](const GeometricParams& g) {
            if (k < 0) return 0.0;
            return g.success * std::exp(static_cast<double>(k) * log_failure(g));
          },
          [&](const GammaParams&) -> double { throw DomainError("pmf: gamma is continuous"); },
      },
      model.params());
}

double cdf(const Model& model, double x) {
  if (std::isnan(x)) throw DomainError("cdf: x is NaN");
  if (x < 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [&](const PoissonParams& p) {
            const double last = std::floor(x);
            double term = std::exp(-p.rate);
            if (term == 0.0 || last > 1e6) {
              return specfun::regularized_gamma_q(last + 1.0, p.rate);
            }
            double total = term;
            for (double k = 1.0; k <= last; k += 1.0) {
              term *= p.rate / k;
              total += term;
              if (term == 0.0 && k > p.rate) break;
            }
            return std::min(total, 1.0);
          },
          [&](const GeometricParams& g) {
            return -std::expm1((std::floor(x) + 1.0) * log_failure(g));
          },
          [&](const GammaParams& g) { return specfun::regularized_gamma_p(g.shape, g.rate * x); },
      },
      model.params());
}

std::optional<Model> try_tilt(const Model& model, double z) {
  check_z(z, "tilt");
  return std::visit(
      Overloaded{
          [&](const PoissonParams& p) -> std::optional<Model> {
            const double rate = p.rate * std::exp(-z);
            if (!(rate > 0.0)) return std::nullopt;
            return Model::poisson(rate);
          },
          [&](const GeometricParams& g) -> std::optional<Model> {
            if (z == 0.0) return model;
            const double failure = g.failure * std::exp(-z);
            if (!(failure > 0.0)) return std::nullopt;
            return Model::geometric_from_failure(failure);
          },
          [&](const GammaParams& g) -> std::optional<Model> {
            return Model::gamma(g.shape, g.rate + z);
          },
      },
      model.params());
}

Model tilt(const Model& model, double z) {
  if (auto tilted = try_tilt(model, z)) return *tilted;
  throw DomainError("tilt: tilted law collapses onto zero at z = " + std::to_string(z));
}

double gini_exact(const Model& model) {
  return std::visit(
      Overloaded{
          [](const PoissonParams& p) {
            const double x = 2.0 * p.rate;
            return std::exp(-x) * (specfun::bessel_i0(x) + specfun::bessel_i1(x));
          },
          [](const GeometricParams& g) { return 1.0 / (1.0 + g.failure); },
          [](const GammaParams& g) {
            // Gamma(2a+1) / (4^a Gamma(a+1)^2) = Gamma(a+1/2) / (sqrt(pi) Gamma(a+1))
            const double a = g.shape;
            if (a < 100.0) {
              return std::tgamma(a + 0.5) / (std::sqrt(std::numbers::pi) * std::tgamma(a + 1.0));
            }
            return std::exp(specfun::ln_gamma(a + 0.5) - specfun::ln_gamma(a + 1.0)) /
                   std::sqrt(std::numbers::pi);
          },
      },
      model.params());
}

double gini_series(const Model& model) {
  const double mu = mean(model);
  const auto cdf_of = [&model](double x) { return cdf(model, x); };

  if (model.is_discrete()) {
    double upper = std::ceil(mu + 12.0 * std::sqrt(mu + 1.0) + 30.0);
    // Heavy geometric tails need more terms than the default cut.
    while (survival(model, upper) > 1e-17) upper = std::ceil(upper * 1.5);
    return gini_from_cdf(cdf_of, mu, Support::discrete, upper);
  }

  double upper = mu;
  while (survival(model, upper) > 1e-17) upper *= 2.0;
  return gini_from_cdf(cdf_of, mu, Support::continuous, upper);
}

namespace {

double sample_poisson(Rng& rng, double rate) {
  const double u = rng.uniform();
  double term = std::exp(-rate);
  double total = term;
  double k = 0.0;
  while (u > total) {
    k += 1.0;
    term *= rate / k;
    total += term;
    // Rounding can leave the partial sum just short of u.
    if (term == 0.0 && k > rate) break;
  }
  return k;
}

double sample_gamma_unit(Rng& rng, double shape) {
  if (shape < 1.0) {
    const double boosted = sample_gamma_unit(rng, shape + 1.0);
    return boosted * std::pow(rng.uniform_pos(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_pos();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

Sample sample(const Model& model, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample: n must be >= 2");
  Rng rng(seed);
  std::vector<double> out(n);
  std::visit(Overloaded{
                 [&](const PoissonParams& p) {
                   if (std::exp(-p.rate) == 0.0) {
                     throw DomainError("sample: Poisson inversion needs rate <= 700");
                   }
                   for (double& v : out) v = sample_poisson(rng, p.rate);
                 },
                 [&](const GeometricParams& g) {
                   const double log_q = log_failure(g);
                   // "+ 0.0" turns floor(-0.0) into +0.
                   for (double& v : out) v = std::floor(std::log(rng.uniform_pos()) / log_q) + 0.0;
                 },
                 [&](const GammaParams& g) {
                   for (double& v : out) v = sample_gamma_unit(rng, g.shape) / g.rate;
                 },
             },
             model.params());
  return Sample(std::move(out));
}

}  // namespace ginibias

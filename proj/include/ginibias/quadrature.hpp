#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

namespace ginibias {

struct QuadratureSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  /// Maximum bisection depth of any panel.
  int max_depth = 60;

  /// Throws DomainError unless tolerances are positive and max_depth >= 10.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
  std::size_t evaluations = 0;
  std::string_view rule;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b]. The panel with the largest
/// |K15 - G7| is bisected until the summed error is within
/// max(abs_tol, rel_tol * |value|). Reports converged = false when a panel
/// that still needs refinement sits at max_depth.
QuadratureResult gauss_kronrod(const Integrand& f, double a, double b,
                               const QuadratureSettings& settings);

/// Recursive adaptive Simpson with Richardson correction.
QuadratureResult adaptive_simpson(const Integrand& f, double a, double b,
                                  const QuadratureSettings& settings);

/// Gauss-Kronrod, falling back to adaptive Simpson if it fails to converge.
/// If both fail the Gauss-Kronrod result is returned with converged = false.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureSettings& settings = {});

}  // namespace ginibias

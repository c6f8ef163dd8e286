#include "ginibias/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "ginibias/errors.hpp"

namespace ginibias {

void QuadratureSettings::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_depth < 10) throw DomainError("quadrature max_depth must be >= 10");
}

namespace {

// Kronrod abscissae on [-1, 1] (positive half; last entry is the centre).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
};

Panel gk15(const Integrand& f, double a, double b, int depth) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

double neumaier_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

constexpr std::size_t kMaxPanels = 200000;

}  // namespace

QuadratureResult gauss_kronrod(const Integrand& f, double a, double b,
                               const QuadratureSettings& settings) {
  settings.validate();
  QuadratureResult result;
  result.rule = "gauss-kronrod-15";
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::priority_queue<Panel, std::vector<Panel>, ByError> panels;
  panels.push(gk15(f, a, b, 0));
  result.evaluations = 15;
  double total = panels.top().value;
  double error = panels.top().error;

  bool converged = false;
  while (true) {
    if (error <= std::max(settings.abs_tol, settings.rel_tol * std::abs(total))) {
      converged = true;
      break;
    }
    const Panel worst = panels.top();
    if (worst.depth >= settings.max_depth || panels.size() >= kMaxPanels) break;
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid, worst.depth + 1);
    const Panel right = gk15(f, mid, worst.b, worst.depth + 1);
    result.evaluations += 30;
    total += (left.value + right.value) - worst.value;
    error += (left.error + right.error) - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum in left-to-right order so the value does not depend on the
  // incremental update history.
  std::vector<Panel> ordered;
  ordered.reserve(panels.size());
  while (!panels.empty()) {
    ordered.push_back(panels.top());
    panels.pop();
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  std::vector<double> values;
  std::vector<double> errors;
  values.reserve(ordered.size());
  errors.reserve(ordered.size());
  for (const Panel& p : ordered) {
    values.push_back(p.value);
    errors.push_back(p.error);
  }
  result.value = neumaier_sum(values);
  result.abs_error = neumaier_sum(errors);
  result.converged =
      converged || result.abs_error <= std::max(settings.abs_tol, settings.rel_tol * std::abs(result.value));
  return result;
}

namespace {

constexpr std::size_t kMaxSimpsonEvaluations = 2000000;

struct SimpsonState {
  const Integrand& f;
  int max_depth;
  std::size_t evaluations = 0;
  bool exhausted = false;
  double error = 0.0;
};

double simpson_step(SimpsonState& s, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = s.f(lm);
  const double frm = s.f(rm);
  s.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    s.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth >= s.max_depth || s.evaluations >= kMaxSimpsonEvaluations) {
    s.exhausted = true;
    s.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_step(s, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(s, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

QuadratureResult adaptive_simpson(const Integrand& f, double a, double b,
                                  const QuadratureSettings& settings) {
  settings.validate();
  QuadratureResult result;
  result.rule = "adaptive-simpson";
  if (a == b) {
    result.converged = true;
    return result;
  }
  SimpsonState state{f, settings.max_depth};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  state.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // Relative tolerance is applied against the coarse estimate.
  const double tol = std::max(settings.abs_tol, settings.rel_tol * std::abs(whole));
  result.value = simpson_step(state, a, b, fa, fm, fb, whole, tol, 0);
  result.abs_error = state.error;
  result.evaluations = state.evaluations;
  result.converged = !state.exhausted && std::isfinite(result.value);
  return result;
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureSettings& settings) {
  QuadratureResult gk = gauss_kronrod(f, a, b, settings);
  if (gk.converged) return gk;
  QuadratureResult simpson = adaptive_simpson(f, a, b, settings);
  if (simpson.converged) {
    simpson.evaluations += gk.evaluations;
    return simpson;
  }
  return gk;
}

}  // namespace ginibias

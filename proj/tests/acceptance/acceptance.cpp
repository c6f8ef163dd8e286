// Acceptance suite. Prints one PASS/FAIL line per criterion; exit status is
// nonzero if any selected criterion fails.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "common/oracle_values.hpp"
#include "ginibias/cli.hpp"
#include "ginibias/distributions.hpp"
#include "ginibias/expectation.hpp"
#include "ginibias/gini.hpp"
#include "ginibias/montecarlo.hpp"
#include "ginibias/quadrature.hpp"
#include "ginibias/specfun.hpp"

using namespace ginibias;
namespace fs = std::filesystem;

namespace {

const std::vector<double> kLambdas{0.5, 1, 2, 5, 10};
const std::vector<double> kPs{0.1, 0.2, 0.4, 0.6, 0.8};
const std::vector<int> kStudySizes{25, 50, 75, 100};
const std::vector<int> kAllSizes{2, 3, 25, 50, 75, 100};
constexpr std::uint64_t kSeed = 42;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

Verdict poisson_n2_exactness() {
  double worst = 0.0;
  double at = 0.0;
  for (double l : kLambdas) {
    const double claimed = gini_exact(Model::poisson(l)) - std::exp(-2 * l);
    const double diff = std::abs(poisson_expected_ghat(l, 2).value - claimed);
    if (diff > worst) worst = diff, at = l;
  }
  return {worst <= 1e-8, fmt("max |E[G^] - (G - e^{-2 lambda})| = %.3e at lambda=%g (tol 1e-8)", worst, at)};
}

Verdict geometric_closed_vs_integral() {
  double worst = 0.0;
  double wp = 0.0;
  double wn = 0.0;
  for (double p : kPs) {
    for (int n : kAllSizes) {
      const double closed = geometric_expected_ghat_hypergeometric(p, n).value;
      const double integral = geometric_expected_ghat_integral(p, n, {1e-13, 1e-13, 60}).value;
      const double diff = std::abs(closed - integral);
      if (diff > worst) worst = diff, wp = p, wn = n;
    }
  }
  return {worst <= 1e-10,
          fmt("max |2F1 form - w-integral| = %.3e at p=%g n=%g (tol 1e-10)", worst, wp, wn)};
}

Verdict gamma_unbiasedness() {
  double worst = 0.0;
  double spread = 0.0;
  for (double alpha : {0.5, 1.0, 2.0, 5.0}) {
    const double g = std::exp(std::lgamma(2 * alpha + 1) - 2 * alpha * std::log(2.0) -
                              2 * std::lgamma(alpha + 1));
    for (int n : {2, 5, 25, 100}) {
      double lo = INFINITY;
      double hi = -INFINITY;
      for (double rate : {0.5, 1.0, 3.0}) {
        const double e = expected_ghat_generic(Model::gamma(alpha, rate), n).value;
        worst = std::max(worst, std::abs(e - g));
        lo = std::min(lo, e);
        hi = std::max(hi, e);
      }
      spread = std::max(spread, hi - lo);
    }
  }
  return {worst <= 1e-8 && spread <= 1e-10,
          fmt("max |E[G^] - G| = %.3e (tol 1e-8), max spread over lambda = %.3e (tol 1e-10)",
              worst, spread)};
}

Verdict brute_force_agreement() {
  const double d1 = std::abs(brute_force_expected_ghat(Model::poisson(0.5), 2, 20) -
                             poisson_expected_ghat(0.5, 2).value);
  const double d2 = std::abs(brute_force_expected_ghat(Model::poisson(0.5), 3, 20) -
                             poisson_expected_ghat(0.5, 3).value);
  const double d3 = std::abs(brute_force_expected_ghat(Model::geometric(0.5), 2, 60) -
                             geometric_expected_ghat(0.5, 2).value);
  return {std::max({d1, d2, d3}) <= 1e-9,
          fmt("|diff| Poisson(0.5) n=2: %.3e, n=3: %.3e; Geometric(0.5) n=2: %.3e (tol 1e-9)", d1,
              d2, d3)};
}

Verdict bound_sandwiches() {
  const double slack = 1e-9;
  int checked = 0;
  int violated = 0;
  for (double l : kLambdas) {
    const double g = gini_exact(Model::poisson(l));
    for (int n : kAllSizes) {
      if (n == 2) continue;
      const double e = expected_ghat(Model::poisson(l), n).value;
      const double shrink = 1.0 - 2.0 / n;
      const double lower = (std::exp(-2 * l) - std::exp(-n * l)) / shrink;
      const double upper = (1.0 - std::exp(-(n - 2) * l)) / shrink * g;
      ++checked;
      if (e < lower - slack || e > upper + slack) ++violated;
    }
  }
  for (double p : kPs) {
    const double g = gini_exact(Model::geometric(p));
    for (int n : kAllSizes) {
      const double e = expected_ghat(Model::geometric(p), n).value;
      const double pn = std::pow(p, n);
      ++checked;
      if (e < (1 - pn) * g - slack || e > 1 - pn + slack) ++violated;
    }
  }
  return {violated == 0, fmt("%g of %g grid points outside their bounds (slack 1e-9)", violated, checked)};
}

Verdict estimator_algebra() {
  std::mt19937_64 gen(kSeed);
  std::uniform_int_distribution<int> size(2, 200);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  double naive_gap = 0.0;
  double scale_gap = 0.0;
  double shift_gap = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = static_cast<std::size_t>(size(gen));
    const double u = unit(gen);
    const Model models[] = {Model::poisson(20 * u), Model::geometric(u), Model::gamma(10 * u, 1 / u)};
    for (const Model& m : models) {
      const Sample s = sample(m, n, gen());
      const double g = estimate_gini(s).value;
      naive_gap = std::max(naive_gap, std::abs(g - estimate_gini_naive(s).value));
      const double factor = 0.01 + 100 * unit(gen);
      scale_gap = std::max(scale_gap, std::abs(estimate_gini(s.scaled(factor)).value - g));
      const double c = 10 * unit(gen);
      const double expect = s.sum() > 0 ? g * s.mean() / (s.mean() + c) : 0.0;
      shift_gap = std::max(shift_gap, std::abs(estimate_gini(s.shifted(c)).value - expect));
    }
  }
  return {std::max({naive_gap, scale_gap, shift_gap}) <= 1e-12,
          fmt("3000 samples: sorted vs naive %.2e, scale %.2e, translation %.2e (tol 1e-12)",
              naive_gap, scale_gap, shift_gap)};
}

Verdict monte_carlo_reproduction() {
  int cells = 0;
  int within = 0;
  int improved = 0;
  double ratio_lo = INFINITY;
  double ratio_hi = 0.0;
  std::string misses;
  for (Family family : {Family::poisson, Family::geometric}) {
    MCConfig c;
    c.family = family;
    c.params = family == Family::poisson ? kLambdas : kPs;
    c.sample_sizes = kStudySizes;
    c.replications = 10000;
    c.base_seed = kSeed;
    for (const CellReport& cell : run_mc(c).cells) {
      ++cells;
      if (std::abs(cell.uncorrected.mean - cell.analytic_expectation) <= 4 * cell.uncorrected.mc_se) {
        ++within;
      }
      if (std::abs(cell.corrected.relbias) <= std::abs(cell.uncorrected.relbias)) {
        ++improved;
      } else {
        misses += " " + std::string(to_string(family)) + "(" + cli::format_number(cell.param) +
                  ",n=" + std::to_string(cell.n) + ")";
      }
      const double ratio = cell.corrected.rmse / cell.uncorrected.rmse;
      ratio_lo = std::min(ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
    }
  }
  const bool a = within == cells;
  const bool b = improved >= 0.9 * cells;
  const bool c = ratio_lo >= 0.5 && ratio_hi <= 1.5;
  std::ostringstream os;
  os << "(a) " << within << "/" << cells << " cells within 4 SE of E[G^] " << (a ? "ok" : "FAIL")
     << "; (b) " << improved << "/" << cells << " cells with reduced |relbias| (need 90%) "
     << (b ? "ok" : "FAIL") << (misses.empty() ? "" : ", not reduced:" + misses)
     << "; (c) RMSE ratio in [" << cli::format_number(ratio_lo) << ", "
     << cli::format_number(ratio_hi) << "] " << (c ? "ok" : "FAIL");
  return {a && b && c, os.str()};
}

Verdict special_functions() {
  double bessel = 0.0;
  for (const auto& o : oracle::kBessel) {
    if (o.x == 0.0) {
      bessel = std::max({bessel, std::abs(specfun::bessel_i0(0.0) - 1.0), std::abs(specfun::bessel_i1(0.0))});
      continue;
    }
    bessel = std::max(bessel, std::abs(specfun::bessel_i0(o.x) / o.i0 - 1));
    bessel = std::max(bessel, std::abs(specfun::bessel_i1(o.x) / o.i1 - 1));
  }
  double hyp = 0.0;
  for (const auto& o : oracle::kHyp2F1) {
    hyp = std::max(hyp, std::abs(specfun::gauss_2f1_1n(o.n, o.z) / o.value - 1));
  }
  double identity = 0.0;
  double at = 0.0;
  for (double l : kLambdas) {
    const auto lhs = integrate(
        [&](double w) { return specfun::bessel_i0(2 * l * w) + specfun::bessel_i1(2 * l * w); }, 0.0,
        1.0, {1e-13, 1e-13, 60});
    const double rhs = (specfun::bessel_i0(2 * l) + specfun::bessel_i1(2 * l) - 1) / (2 * l);
    const double diff = std::abs(lhs.value - rhs);
    if (diff > identity) identity = diff, at = l;
  }
  std::ostringstream os;
  os << "Bessel max rel err " << cli::format_number(bessel) << ", 2F1 max rel err "
     << cli::format_number(hyp) << " (tol 1e-12, 20 points each); integral identity max |diff| "
     << cli::format_number(identity) << " at lambda=" << cli::format_number(at) << " (tol 1e-9)";
  return {bessel <= 1e-12 && hyp <= 1e-12 && identity <= 1e-9, os.str()};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() /
                       ("ginibias_acceptance_" + std::to_string(std::chrono::steady_clock::now()
                                                                   .time_since_epoch()
                                                                   .count()));
  fs::create_directories(dir);
  {
    std::ofstream conf(dir / "study.conf");
    conf << "family = geometric\nparams = 0.1, 0.2, 0.4, 0.6, 0.8\nn = 25, 50, 75, 100\n"
            "replications = 1000\nseed = 42\n";
  }
  struct RunSpec {
    std::string name;
    std::string threads;
  };
  const RunSpec runs[] = {{"run1", "1"}, {"run2", "1"}, {"run3", "4"}, {"run4", "7"}};
  std::vector<std::string> csvs;
  bool ok = true;
  for (const RunSpec& r : runs) {
    std::ostringstream out;
    std::ostringstream err;
    const std::vector<std::string> args{"mc", (dir / "study.conf").string(), "--threads", r.threads,
                                        "--out", (dir / r.name).string()};
    ok = ok && cli::run(args, out, err) == cli::kSuccess;
    csvs.push_back(read_file(dir / r.name / "mc_results.csv"));
  }
  fs::remove_all(dir);
  const bool same = ok && !csvs[0].empty() &&
                    std::all_of(csvs.begin(), csvs.end(), [&](const std::string& s) { return s == csvs[0]; });
  return {same, std::string("4 runs (threads 1, 1, 4, 7): mc_results.csv ") +
                    (same ? "byte-identical" : "differs") + " (" + std::to_string(csvs[0].size()) +
                    " bytes)"};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict()> check;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "Poisson n=2 exactness", poisson_n2_exactness},
      {2, "Geometric closed form vs integral", geometric_closed_vs_integral},
      {3, "Gamma unbiasedness", gamma_unbiasedness},
      {4, "Brute-force oracle agreement", brute_force_agreement},
      {5, "Bounds sandwiches", bound_sandwiches},
      {6, "Estimator algebra", estimator_algebra},
      {7, "Monte Carlo reproduction", monte_carlo_reproduction},
      {8, "Special-function suite", special_functions},
      {9, "Determinism", determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  int failures = 0;
  int ran = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d [PRIMARY] %s: %s | %s | %.2fs\n", c.id, c.title,
                v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}

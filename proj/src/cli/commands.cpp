#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ginibias/cli.hpp"
#include "ginibias/errors.hpp"
#include "ginibias/expectation.hpp"

namespace ginibias::cli {
namespace {

struct ModelOptions {
  std::string family;
  std::optional<double> lambda;
  std::optional<double> p;
  std::optional<double> alpha;

  void attach(CLI::App& cmd) {
    cmd.add_option("--family", family, "poisson | geometric | gamma")->required();
    cmd.add_option("--lambda", lambda, "Poisson rate, or gamma rate");
    cmd.add_option("--p", p, "geometric success probability, support {0,1,...}");
    cmd.add_option("--alpha", alpha, "gamma shape");
  }

  Model model() const {
    const auto f = parse_family(family);
    if (!f) throw DomainError("unknown family '" + family + "' (poisson, geometric, gamma)");
    const auto need = [](const std::optional<double>& v, const char* flag) {
      if (!v) throw DomainError(std::string("missing ") + flag);
      return *v;
    };
    switch (*f) {
      case Family::poisson:
        return Model::poisson(need(lambda, "--lambda"));
      case Family::geometric:
        return Model::geometric(need(p, "--p"));
      case Family::gamma:
        return Model::gamma(need(alpha, "--alpha"), need(lambda, "--lambda"));
    }
    throw std::logic_error("unreachable");
  }
};

std::string parameter_text(const Model& model) {
  return std::visit(
      [](const auto& params) -> std::string {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          return "lambda=" + format_number(params.rate);
        } else if constexpr (std::is_same_v<T, GeometricParams>) {
          return "p=" + format_number(params.success);
        } else {
          return "alpha=" + format_number(params.shape) + ";lambda=" + format_number(params.rate);
        }
      },
      model.params());
}

int cmd_gini(const ModelOptions& opts, std::ostream& out) {
  const Model model = opts.model();
  const double exact = gini_exact(model);
  const double series = gini_series(model);
  out << "family,parameters,gini_exact,gini_series,abs_difference\n";
  out << to_string(model.family()) << ',' << parameter_text(model) << ',' << format_number(exact)
      << ',' << format_number(series) << ',' << format_number(std::abs(exact - series)) << '\n';
  return kSuccess;
}

int cmd_bias(const ModelOptions& opts, int n, const QuadratureSettings& settings,
             std::ostream& out) {
  const Model model = opts.model();
  const BiasReport r = bias(model, n, settings);
  out << "family,parameters,n,gini,expectation,bias,lower_bound,upper_bound,abs_error,method\n";
  out << to_string(model.family()) << ',' << parameter_text(model) << ',' << n << ','
      << format_number(r.gini) << ',' << format_number(r.expectation) << ','
      << format_number(r.bias) << ',' << format_number(r.lower_bound) << ','
      << format_number(r.upper_bound) << ',' << format_number(r.abs_error_estimate) << ','
      << to_string(r.method) << '\n';
  return kSuccess;
}

struct McOptions {
  std::string config_path;
  std::optional<unsigned> threads;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
};

int cmd_mc(const McOptions& opts, std::ostream& out, std::ostream& err) {
  MCConfig config;
  try {
    config = load_config(opts.config_path);
  } catch (const ConfigError& e) {
    err << "ginibias mc: " << e.what() << '\n';
    return kConfigError;
  }
  if (opts.seed) config.base_seed = *opts.seed;
  const unsigned threads =
      opts.threads.value_or(std::max(1u, std::thread::hardware_concurrency()));

  const MCReport report = run_mc(config, threads);

  std::ostringstream csv;
  write_results_csv(csv, report);
  const RunManifest manifest{"mc", config_digest(config), GINIBIAS_VERSION, config.base_seed,
                             utc_timestamp()};

  const std::filesystem::path dir(opts.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream csv_file(dir / "mc_results.csv", std::ios::binary);
  std::ofstream manifest_file(dir / "manifest.json", std::ios::binary);
  if (!csv_file || !manifest_file) {
    err << "ginibias mc: cannot write to " << dir.string() << '\n';
    return kDataError;
  }
  csv_file << csv.str();
  manifest_file << manifest_json(manifest, config, threads);
  out << csv.str();
  return kSuccess;
}

int cmd_plot(const std::string& results_path, const std::string& panel_name,
             const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto panel = parse_panel(panel_name);
  if (!panel) {
    err << "ginibias plot: unknown panel '" << panel_name
        << "' (relbias_n, rmse_n, relbias_param, rmse_param)\n";
    return kParameterError;
  }
  std::ifstream in(results_path);
  if (!in) {
    err << "ginibias plot: cannot open " << results_path << '\n';
    return kDataError;
  }
  Chart chart;
  try {
    chart = render_chart(read_results_csv(in), *panel);
  } catch (const DataError& e) {
    err << "ginibias plot: " << results_path << ": " << e.what() << '\n';
    return kDataError;
  }
  std::ofstream svg(out_path, std::ios::binary);
  if (!svg || !(svg << chart.svg)) {
    err << "ginibias plot: cannot write " << out_path << '\n';
    return kDataError;
  }
  out << "panel,series,points_per_series,output\n";
  out << to_string(*panel) << ',' << chart.series << ',' << chart.points_per_series << ','
      << out_path << '\n';
  return kSuccess;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gini coefficient, finite-sample bias of its estimator, and Monte Carlo study"};
  app.name("ginibias");
  app.set_version_flag("--version", GINIBIAS_VERSION);
  app.require_subcommand(1);

  ModelOptions gini_opts;
  CLI::App* gini = app.add_subcommand("gini", "Population Gini: closed form and CDF series");
  gini_opts.attach(*gini);

  ModelOptions bias_opts;
  int n = 0;
  QuadratureSettings settings;
  CLI::App* bias_cmd = app.add_subcommand("bias", "E[G^], bias and analytic bounds for size n");
  bias_opts.attach(*bias_cmd);
  bias_cmd->add_option("--n", n, "sample size (>= 2)")->required();
  bias_cmd->add_option("--abs-tol", settings.abs_tol, "quadrature absolute tolerance");
  bias_cmd->add_option("--rel-tol", settings.rel_tol, "quadrature relative tolerance");
  bias_cmd->add_option("--max-depth", settings.max_depth, "quadrature bisection depth");

  McOptions mc_opts;
  CLI::App* mc = app.add_subcommand("mc", "Run a Monte Carlo study from a config file");
  mc->add_option("config", mc_opts.config_path, "config file (key = value lines)")->required();
  mc->add_option("--threads", mc_opts.threads, "worker threads (default: all cores)");
  mc->add_option("--out", mc_opts.out_dir, "output directory for mc_results.csv and manifest.json");
  mc->add_option("--seed", mc_opts.seed, "override the config's base seed");

  std::string results_path;
  std::string panel;
  std::string svg_path;
  CLI::App* plot = app.add_subcommand("plot", "Render one panel of mc_results.csv as SVG");
  plot->add_option("results", results_path, "mc_results.csv from 'ginibias mc'")->required();
  plot->add_option("--panel", panel, "relbias_n | rmse_n | relbias_param | rmse_param")->required();
  plot->add_option("--out", svg_path, "output SVG path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kParameterError;
  }

  try {
    if (*gini) return cmd_gini(gini_opts, out);
    if (*bias_cmd) return cmd_bias(bias_opts, n, settings, out);
    if (*mc) return cmd_mc(mc_opts, out, err);
    if (*plot) return cmd_plot(results_path, panel, svg_path, out, err);
  } catch (const ConvergenceError& e) {
    err << "ginibias: " << e.what() << '\n';
    return kConvergenceError;
  } catch (const DomainError& e) {
    err << "ginibias: " << e.what() << '\n';
    return kParameterError;
  }
  return kParameterError;
}

}  // namespace ginibias::cli

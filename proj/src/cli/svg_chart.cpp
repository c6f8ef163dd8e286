#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "ginibias/cli.hpp"

namespace ginibias::cli {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 200.0;  // legend column
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

// Six hues times two dash patterns: twelve stroke styles. A series pair
// shares a hue; the corrected estimator is dashed.
constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#17becf"};
constexpr std::array<const char*, 2> kDashes = {"none", "8,5"};
constexpr std::array<const char*, 3> kHueDash = {"", "2,3", "12,3,2,3"};

struct Axis {
  double lo;
  double hi;
  std::vector<double> ticks;
};

Axis nice_axis(double lo, double hi, int target_ticks) {
  if (lo == hi) {
    const double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
  const double raw = (hi - lo) / target_ticks;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    step = m * magnitude;
    if (step >= raw) break;
  }
  Axis axis{std::floor(lo / step) * step, std::ceil(hi / step) * step, {}};
  for (double t = axis.lo; t <= axis.hi + 0.5 * step; t += step) {
    axis.ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return axis;
}

std::string param_symbol(const std::string& family) {
  if (family == "poisson") return "lambda";
  if (family == "geometric") return "p";
  return "alpha";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::optional<Panel> parse_panel(std::string_view name) {
  if (name == "relbias_n") return Panel::relbias_n;
  if (name == "rmse_n") return Panel::rmse_n;
  if (name == "relbias_param") return Panel::relbias_param;
  if (name == "rmse_param") return Panel::rmse_param;
  return std::nullopt;
}

std::string_view to_string(Panel panel) {
  switch (panel) {
    case Panel::relbias_n:
      return "relbias_n";
    case Panel::rmse_n:
      return "rmse_n";
    case Panel::relbias_param:
      return "relbias_param";
    case Panel::rmse_param:
      return "rmse_param";
  }
  return "unknown";
}

Chart render_chart(const std::vector<ResultRow>& rows, Panel panel) {
  if (rows.empty()) throw DataError("no rows to plot");
  const std::string family = rows.front().family;
  for (const ResultRow& r : rows) {
    if (r.family != family) throw DataError("results mix families; plot one family at a time");
  }
  const bool by_n = panel == Panel::relbias_n || panel == Panel::rmse_n;
  const bool relbias = panel == Panel::relbias_n || panel == Panel::relbias_param;
  const std::string symbol = param_symbol(family);

  // (held value, estimator order) -> points sorted by x
  std::map<std::pair<double, int>, std::vector<std::pair<double, double>>> series;
  for (const ResultRow& r : rows) {
    const double x = by_n ? r.n : r.param;
    const double held = by_n ? r.param : r.n;
    const int estimator = r.estimator == "uncorrected" ? 0 : 1;
    series[{held, estimator}].emplace_back(x, relbias ? r.relbias : r.rmse);
  }
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  std::size_t max_points = 0;
  for (auto& [key, points] : series) {
    std::sort(points.begin(), points.end());
    max_points = std::max(max_points, points.size());
    for (const auto& [x, y] : points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (relbias) {
    ymin = std::min(ymin, 0.0);
    ymax = std::max(ymax, 0.0);
  } else {
    ymin = 0.0;
  }
  const Axis xa = nice_axis(xmin, xmax, 6);
  const Axis ya = nice_axis(ymin, ymax, 6);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xa.lo) / (xa.hi - xa.lo) * plot_w; };
  const auto py = [&](double y) { return kTop + plot_h - (y - ya.lo) / (ya.hi - ya.lo) * plot_h; };

  std::ostringstream os;
  os.precision(6);
  const std::string metric = relbias ? "Relative bias" : "RMSE";
  const std::string xlabel = by_n ? "n" : symbol;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" "
        "height=\"600\" font-family=\"sans-serif\" font-size=\"13\">\n";
  os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
     << metric << " vs " << xlabel << " (" << family << ")</text>\n";

  // Grid and ticks.
  for (double t : ya.ticks) {
    os << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + plot_w << "\" y1=\"" << py(t) << "\" y2=\""
       << py(t) << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">"
       << format_number(t) << "</text>\n";
  }
  for (double t : xa.ticks) {
    os << "<line x1=\"" << px(t) << "\" x2=\"" << px(t) << "\" y1=\"" << kTop + plot_h
       << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(t) << "\" y=\"" << kTop + plot_h + 20 << "\" text-anchor=\"middle\">"
       << format_number(t) << "</text>\n";
  }
  if (relbias) {
    os << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + plot_w << "\" y1=\"" << py(0.0)
       << "\" y2=\"" << py(0.0) << "\" stroke=\"#808080\" stroke-width=\"1.2\"/>\n";
  }
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
     << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 25
     << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
  os << "<text transform=\"translate(24," << kTop + plot_h / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << metric << "</text>\n";

  // Series and legend.
  std::map<double, std::size_t> hue_of;
  for (const auto& [key, points] : series) hue_of.emplace(key.first, hue_of.size());
  double legend_y = kTop + 10;
  for (const auto& [key, points] : series) {
    const std::size_t hue = hue_of.at(key.first);
    const char* color = kColors[hue % kColors.size()];
    std::string dash = kDashes[static_cast<std::size_t>(key.second)];
    // Beyond six held values, vary the solid pattern too.
    const char* extra = kHueDash[(hue / kColors.size()) % kHueDash.size()];
    if (key.second == 0 && extra[0] != '\0') dash = extra;
    const std::string dash_attr = dash == "none" ? "" : " stroke-dasharray=\"" + dash + "\"";

    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"" << dash_attr
       << " points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      os << (i ? " " : "") << px(points[i].first) << ',' << py(points[i].second);
    }
    os << "\"/>\n";
    for (const auto& [x, y] : points) {
      os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\""
         << (key.second == 0 ? color : "white") << "\" stroke=\"" << color << "\"/>\n";
    }
    const std::string label = (by_n ? symbol : std::string("n")) + "=" + format_number(key.first) +
                              (key.second == 0 ? " uncorrected" : " corrected");
    const double lx = kLeft + plot_w + 15;
    os << "<line x1=\"" << lx << "\" x2=\"" << lx + 30 << "\" y1=\"" << legend_y << "\" y2=\""
       << legend_y << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << dash_attr << "/>\n";
    os << "<text x=\"" << lx + 36 << "\" y=\"" << legend_y + 4 << "\" font-size=\"11\">"
       << escape(label) << "</text>\n";
    legend_y += 18;
  }
  os << "</svg>\n";
  return {os.str(), series.size(), max_points};
}

}  // namespace ginibias::cli

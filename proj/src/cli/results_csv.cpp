#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ginibias/cli.hpp"

namespace ginibias::cli {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <class T>
T field_as(const std::string& text, int line, const char* column) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw DataError("line " + std::to_string(line) + ": column " + column + " is not numeric: '" +
                    text + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::vector<ResultRow> result_rows(const MCReport& report) {
  std::vector<ResultRow> rows;
  rows.reserve(2 * report.cells.size());
  for (const CellReport& c : report.cells) {
    const std::string family(to_string(c.family));
    const std::string digest = hex64(c.seed_digest);
    rows.push_back({family, c.param, c.n, "uncorrected", c.uncorrected.relbias, c.uncorrected.rmse,
                    c.uncorrected.mc_se, c.degenerate_count, digest});
    rows.push_back({family, c.param, c.n, "corrected", c.corrected.relbias, c.corrected.rmse,
                    c.corrected.mc_se, c.degenerate_count, digest});
  }
  return rows;
}

void write_results_csv(std::ostream& out, const MCReport& report) {
  out << kResultsHeader << '\n';
  for (const ResultRow& r : result_rows(report)) {
    out << r.family << ',' << format_number(r.param) << ',' << r.n << ',' << r.estimator << ','
        << format_number(r.relbias) << ',' << format_number(r.rmse) << ','
        << format_number(r.mc_se) << ',' << r.degenerate_count << ',' << r.seed_digest << '\n';
  }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("results file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader) {
    throw DataError("unexpected header; expected '" + std::string(kResultsHeader) + "'");
  }
  std::vector<ResultRow> rows;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 9) {
      throw DataError("line " + std::to_string(number) + ": expected 9 fields, found " +
                      std::to_string(f.size()));
    }
    if (!parse_family(f[0])) throw DataError("line " + std::to_string(number) + ": unknown family");
    if (f[3] != "uncorrected" && f[3] != "corrected") {
      throw DataError("line " + std::to_string(number) + ": unknown estimator '" + f[3] + "'");
    }
    ResultRow r{f[0],
                field_as<double>(f[1], number, "param"),
                field_as<int>(f[2], number, "n"),
                f[3],
                field_as<double>(f[4], number, "relbias"),
                field_as<double>(f[5], number, "rmse"),
                field_as<double>(f[6], number, "mc_se"),
                field_as<std::size_t>(f[7], number, "degenerate_count"),
                f[8]};
    if (!std::isfinite(r.relbias) || !std::isfinite(r.rmse)) {
      throw DataError("line " + std::to_string(number) + ": non-finite metric");
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw DataError("results file has a header but no rows");
  return rows;
}

}  // namespace ginibias::cli

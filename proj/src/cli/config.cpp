#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "ginibias/cli.hpp"
#include "ginibias/errors.hpp"
#include "json.hpp"

namespace ginibias::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) out.push_back(trim(item));
  return out;
}

template <class T>
bool parse_number(const std::string& text, T& out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

struct Parser {
  const std::string& source;
  int line = 0;
  std::string field;

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(source, line, field, message);
  }

  std::vector<double> doubles(const std::string& value) const {
    std::vector<double> out;
    for (const std::string& item : split_list(value)) {
      double v = 0.0;
      if (!parse_number(item, v)) fail("'" + item + "' is not a number");
      out.push_back(v);
    }
    if (out.empty()) fail("list is empty");
    return out;
  }

  std::vector<int> integers(const std::string& value) const {
    std::vector<int> out;
    for (const std::string& item : split_list(value)) {
      int v = 0;
      if (!parse_number(item, v)) fail("'" + item + "' is not an integer");
      out.push_back(v);
    }
    if (out.empty()) fail("list is empty");
    return out;
  }
};

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& field,
                         const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) +
                         (field.empty() ? std::string() : " [" + field + "]") + ": " + message),
      line_(line),
      field_(field) {}

MCConfig parse_config(std::istream& in, const std::string& source) {
  MCConfig config;
  Parser p{source, 0, {}};
  std::set<std::string> seen;
  std::optional<double> rate;
  int family_line = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line;
    p.field.clear();
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) p.fail("expected 'key = value'");
    p.field = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (!seen.insert(p.field).second) p.fail("duplicate key");
    if (value.empty()) p.fail("missing value");

    if (p.field == "family") {
      const auto family = parse_family(value);
      if (!family) p.fail("unknown family '" + value + "' (poisson, geometric, gamma)");
      config.family = *family;
      family_line = p.line;
    } else if (p.field == "params") {
      config.params = p.doubles(value);
    } else if (p.field == "rate") {
      double v = 0.0;
      if (!parse_number(value, v) || !(v > 0.0)) p.fail("rate must be a positive number");
      rate = v;
    } else if (p.field == "n") {
      config.sample_sizes = p.integers(value);
      for (int n : config.sample_sizes) {
        if (n < 2) p.fail("sample sizes must be >= 2");
      }
    } else if (p.field == "replications") {
      std::size_t r = 0;
      if (!parse_number(value, r) || r < 1) p.fail("replications must be a positive integer");
      config.replications = r;
    } else if (p.field == "seed") {
      std::uint64_t s = 0;
      if (!parse_number(value, s)) p.fail("seed must be an unsigned 64-bit integer");
      config.base_seed = s;
    } else if (p.field == "clip_corrected") {
      if (value == "true") {
        config.clip_corrected = true;
      } else if (value == "false") {
        config.clip_corrected = false;
      } else {
        p.fail("expected true or false");
      }
    } else {
      p.fail("unknown key");
    }
  }

  p.field.clear();
  for (const char* required : {"family", "params", "n"}) {
    if (!seen.contains(required)) {
      p.field = required;
      p.fail("required key is missing");
    }
  }
  if (rate) {
    if (config.family != Family::gamma) {
      p.line = family_line;
      p.field = "rate";
      p.fail("rate applies to the gamma family only");
    }
    config.gamma_rate = *rate;
  }
  try {
    config.validate();
  } catch (const DomainError& e) {
    p.field = "params";
    p.fail(e.what());
  }
  return config;
}

MCConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "", "cannot open config file");
  return parse_config(in, path.string());
}

std::string canonical_config(const MCConfig& config) {
  std::ostringstream os;
  os << "family=" << to_string(config.family) << "\nparams=";
  for (std::size_t i = 0; i < config.params.size(); ++i) {
    os << (i ? "," : "") << format_number(config.params[i]);
  }
  if (config.family == Family::gamma) os << "\nrate=" << format_number(config.gamma_rate);
  os << "\nn=";
  for (std::size_t i = 0; i < config.sample_sizes.size(); ++i) {
    os << (i ? "," : "") << config.sample_sizes[i];
  }
  os << "\nreplications=" << config.replications << "\nseed=" << config.base_seed
     << "\nclip_corrected=" << (config.clip_corrected ? "true" : "false") << "\n";
  return os.str();
}

std::string config_digest(const MCConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_config(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return hex64(h);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const RunManifest& manifest, const MCConfig& config, unsigned threads) {
  nlohmann::ordered_json j;
  j["command"] = manifest.command;
  j["config_digest"] = manifest.config_digest;
  j["tool_version"] = manifest.tool_version;
  j["base_seed"] = manifest.base_seed;
  j["timestamp"] = manifest.timestamp;
  j["threads"] = threads;
  j["config"] = {
      {"family", std::string(to_string(config.family))},
      {"params", config.params},
      {"sample_sizes", config.sample_sizes},
      {"replications", config.replications},
      {"clip_corrected", config.clip_corrected},
  };
  if (config.family == Family::gamma) {
    j["config"]["rate"] = config.gamma_rate;
    j["notes"].push_back("gamma cells extend the Poisson/geometric study; the plug-in correction is zero");
  }
  j["notes"].push_back("all-zero replications are kept: G^ = 0 and the plug-in uses lambda^ = 1e-8 or p^ = 1 - 1e-8");
  j["notes"].push_back("replication seed = derive_seed(base_seed, family, param_index, n, r)");
  j["results"] = "mc_results.csv";
  return j.dump(2) + "\n";
}

}  // namespace ginibias::cli

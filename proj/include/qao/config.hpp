#pragma once

// Run configuration shared by the report and the command-line tool, and the
// flat `key = value` configuration-file format.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qao/reference_data.hpp"

namespace qao {

/// Raised for malformed user input (flags, config files, lambda text).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when reading or writing a file fails.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coupling value together with the text it was given as ("3/10").
struct Lambda {
  double value = 0.0;
  std::string label;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_real(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

template <class Int>
Int parse_integer(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

inline bool parse_bool(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
}

}  // namespace detail

/// Parses a non-negative coupling given as a decimal ("0.3") or a fraction
/// of decimals ("3/10"); a fraction is one correctly rounded division.
inline Lambda parse_lambda(std::string_view text) {
  const std::string_view t = detail::trim(text);
  Lambda out;
  out.label = std::string(t);
  if (const auto slash = t.find('/'); slash != std::string_view::npos) {
    const double num = detail::parse_real(t.substr(0, slash), "lambda numerator");
    const double den = detail::parse_real(t.substr(slash + 1), "lambda denominator");
    if (den == 0.0) throw UsageError("invalid lambda: zero denominator in '" + out.label + "'");
    out.value = num / den;
  } else {
    out.value = detail::parse_real(t, "lambda");
  }
  if (out.value < 0.0) throw UsageError("invalid lambda: must be non-negative, got '" + out.label + "'");
  return out;
}

inline std::vector<Lambda> parse_lambda_list(std::string_view text) {
  std::vector<Lambda> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(parse_lambda(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::vector<Lambda> lambda_grid = default_lambda_grid();
  double g_squared = 1.0;
  int levels = 6;
  double oracle_tol = 1e-6;
  std::uint64_t seed = 20250601;
  int restarts = 16;
  bool even_odd_only = false;
  std::string output_dir = ".";
  OutputFormat format = OutputFormat::Csv;
  int jobs = 1;

  static std::vector<Lambda> default_lambda_grid() {
    std::vector<Lambda> grid;
    for (std::size_t i = 0; i < reference::lambda_grid.size(); ++i)
      grid.push_back(Lambda{reference::lambda_grid[i], std::string(reference::lambda_labels[i])});
    return grid;
  }

  void validate() const {
    if (lambda_grid.empty()) throw UsageError("lambda_grid must not be empty");
    for (const Lambda& l : lambda_grid)
      if (!(l.value >= 0.0)) throw UsageError("lambda_grid values must be non-negative");
    if (!(g_squared >= 0.0)) throw UsageError("g_squared must be non-negative");
    if (levels < 1 || levels > 12) throw UsageError("levels must be in 1..12");
    if (!(oracle_tol > 0.0)) throw UsageError("oracle_tol must be positive");
    if (restarts < 0) throw UsageError("restarts must be non-negative");
    if (jobs < 1) throw UsageError("jobs must be at least 1");
  }

  /// Applies one `key = value` setting; unknown keys are errors.
  void set(std::string_view key, std::string_view value) {
    if (key == "lambda_grid") {
      lambda_grid = parse_lambda_list(value);
    } else if (key == "g_squared") {
      g_squared = detail::parse_real(value, "g_squared");
    } else if (key == "levels") {
      levels = detail::parse_integer<int>(value, "levels");
    } else if (key == "oracle_tol") {
      oracle_tol = detail::parse_real(value, "oracle_tol");
    } else if (key == "seed") {
      seed = detail::parse_integer<std::uint64_t>(value, "seed");
    } else if (key == "restarts") {
      restarts = detail::parse_integer<int>(value, "restarts");
    } else if (key == "even_odd_only") {
      even_odd_only = detail::parse_bool(value, "even_odd_only");
    } else if (key == "output_dir") {
      output_dir = std::string(detail::trim(value));
    } else if (key == "format") {
      const auto v = detail::trim(value);
      if (v == "csv")
        format = OutputFormat::Csv;
      else if (v == "json")
        format = OutputFormat::Json;
      else
        throw UsageError("invalid format: '" + std::string(v) + "' (expected csv or json)");
    } else if (key == "jobs") {
      jobs = detail::parse_integer<int>(value, "jobs");
    } else {
      throw UsageError("unknown configuration key '" + std::string(key) + "'");
    }
  }
};

/// Reads `key = value` lines; blank lines and lines starting with '#' are skipped.
inline void load_config(std::istream& in, RunConfig& config, std::string_view source = "<config>") {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos)
      throw UsageError(std::string(source) + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string_view key = detail::trim(t.substr(0, eq));
    try {
      config.set(key, t.substr(eq + 1));
    } catch (const UsageError& e) {
      throw UsageError(std::string(source) + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  RunConfig config;
  load_config(in, config, path);
  return config;
}

}  // namespace qao

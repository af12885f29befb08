#include "semsec/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "semsec/errors.hpp"

namespace semsec::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) { return fmt::format("{}", v); }

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError(fmt::format("{}: '{}' is not a number", what, text));
  return v;
}

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.empty()) throw ConfigError("empty grid");
  if (text.rfind("lin:", 0) == 0) {
    std::vector<std::string_view> parts;
    std::string_view rest = text.substr(4);
    for (;;) {
      const auto c = rest.find(':');
      parts.push_back(rest.substr(0, c));
      if (c == std::string_view::npos) break;
      rest = rest.substr(c + 1);
    }
    if (parts.size() != 3) throw ConfigError(fmt::format("grid '{}': expected lin:start:stop:count", text));
    const double a = parse_double(parts[0], "grid start");
    const double b = parse_double(parts[1], "grid stop");
    const double n = parse_double(parts[2], "grid count");
    if (!(n >= 1.0) || n != static_cast<double>(static_cast<long>(n)))
      throw ConfigError(fmt::format("grid '{}': count must be a positive integer", text));
    const long count = static_cast<long>(n);
    if (count == 1) return {a};
    for (long i = 0; i < count; ++i)
      out.push_back(i == count - 1 ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    return out;
  }
  std::string_view rest = text;
  for (;;) {
    const auto c = rest.find(',');
    out.push_back(parse_double(rest.substr(0, c), "grid value"));
    if (c == std::string_view::npos) break;
    rest = rest.substr(c + 1);
  }
  return out;
}

Config Config::from_string(std::string_view text, const std::string& origin) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}:{}: {}", origin, e.line(), e.message()));
  }
  Config cfg;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      cfg.set(name, node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) {
      if (!leaf.empty()) throw ConfigError(fmt::format("{}: nested section under [{}]", origin, name));
      cfg.set(name + "." + key, leaf.data());
    }
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), path);
}

void Config::set(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError(fmt::format("override '{}' must look like section.key=value", assignment));
  const auto key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError(fmt::format("override '{}' has an empty key", assignment));
  set(std::string(key), std::string(trim(assignment.substr(eq + 1))));
}

void Config::set(const std::string& key, std::string value) { values_[key] = std::move(value); }

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Config::get_string(const std::string& key, const std::string& def) const {
  const auto it = values_.find(key);
  const std::string v = it == values_.end() ? def : it->second;
  resolved_[key] = v;
  return v;
}

std::string Config::require(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing required setting '" + key + "'");
  resolved_[key] = it->second;
  return it->second;
}

double Config::get_double(const std::string& key, double def) const {
  const auto it = values_.find(key);
  const double v = it == values_.end() ? def : parse_double(it->second, key);
  resolved_[key] = format_double(v);
  return v;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t def) const {
  const auto it = values_.find(key);
  std::uint64_t v = def;
  if (it != values_.end()) {
    const auto s = trim(it->second);
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
      throw ConfigError(fmt::format("{}: '{}' is not a nonnegative integer", key, s));
  }
  resolved_[key] = std::to_string(v);
  return v;
}

int Config::get_int(const std::string& key, int def) const {
  const std::uint64_t v = get_u64(key, static_cast<std::uint64_t>(def < 0 ? 0 : def));
  if (v > 1000000000ull) throw ConfigError(fmt::format("{}: {} is too large", key, v));
  return static_cast<int>(v);
}

std::vector<double> Config::get_grid(const std::string& key, const std::string& def) const {
  const auto it = values_.find(key);
  const std::string text = it == values_.end() ? def : it->second;
  resolved_[key] = text;
  try {
    return parse_grid(text);
  } catch (const ConfigError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

void Config::check_unused() const {
  std::string unknown;
  for (const auto& [k, v] : values_)
    if (!resolved_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
  if (!unknown.empty()) throw ConfigError("unknown or unused settings: " + unknown);
}

}  // namespace semsec::cli

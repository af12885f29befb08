#pragma once

// Run configuration: an INI file of "[section]" headers and "key = value" lines
// (comment lines start with ';' or '#'), plus "section.key=value" overrides from
// the command line.
// Every lookup records the value it resolved to, defaults included, so outputs
// can embed the complete configuration that produced them.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace semsec::cli {

class Config {
 public:
  Config() = default;

  /// Throws IoError if the file cannot be read, ConfigError on a syntax error.
  static Config from_file(const std::string& path);
  static Config from_string(std::string_view text, const std::string& origin = "<string>");

  /// "section.key=value"; later assignments win.
  void set(std::string_view assignment);
  void set(const std::string& key, std::string value);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& def) const;
  double get_double(const std::string& key, double def) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t def) const;
  int get_int(const std::string& key, int def) const;
  /// Grid given as "a, b, c" or "lin:start:stop:count".
  std::vector<double> get_grid(const std::string& key, const std::string& def) const;
  /// Required string; ConfigError when absent.
  std::string require(const std::string& key) const;

  /// Keys looked up so far with the values they resolved to, sorted by key.
  const std::map<std::string, std::string>& resolved() const noexcept { return resolved_; }
  /// Throws ConfigError naming any supplied key that was never looked up.
  void check_unused() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
};

/// Parses "a, b" or "lin:start:stop:count" into a grid.
std::vector<double> parse_grid(std::string_view text);
double parse_double(std::string_view text, std::string_view what);

}  // namespace semsec::cli

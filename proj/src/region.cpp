#include "semsec/region.hpp"

#include <algorithm>
#include <cmath>

#include "semsec/errors.hpp"

namespace semsec {

void RegionPoint::validate() const {
  if (!(R >= 0.0)) throw DomainError("R must be >= 0");
  if (!(R_k >= 0.0)) throw DomainError("R_k must be >= 0");
  if (!(D_s > 0.0)) throw DomainError("D_s must be > 0");
  if (!(D_u > 0.0)) throw DomainError("D_u must be > 0");
}

void FeasibilityReport::add(std::string name, double value) {
  // NaN slacks count as violated.
  if (!(value >= -tolerance)) feasible = false;
  slacks.push_back({std::move(name), value});
}

std::optional<double> FeasibilityReport::slack(std::string_view name) const {
  auto it = std::find_if(slacks.begin(), slacks.end(), [&](const Slack& s) { return s.name == name; });
  if (it == slacks.end()) return std::nullopt;
  return it->value;
}

double FeasibilityReport::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : slacks) m = std::min(m, s.value);
  return m;
}

SecrecyMode parse_secrecy_mode(std::string_view name) {
  if (name == "full-semantic" || name == "full_semantic") return SecrecyMode::full_semantic;
  if (name == "full") return SecrecyMode::full;
  if (name == "none") return SecrecyMode::none;
  throw ConfigError("unknown secrecy mode '" + std::string(name) + "'");
}

std::string to_string(SecrecyMode mode) {
  switch (mode) {
    case SecrecyMode::full_semantic: return "full-semantic";
    case SecrecyMode::full: return "full";
    case SecrecyMode::none: return "none";
  }
  return "?";
}

}  // namespace semsec

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semsec {

/// Absolute tolerance (nats) applied to constraint comparisons unless overridden.
inline constexpr double kDefaultTolerance = 1e-9;

/// Candidate rate-distortion-equivocation tuple. R is channel uses per source
/// symbol; rates and equivocations are in nats.
struct RegionPoint {
  double R = 0.0;
  double R_k = 0.0;
  double D_s = 0.0;
  double D_u = 0.0;
  double delta_s = 0.0;
  double delta_u = 0.0;
  double delta_su = 0.0;

  /// Throws DomainError on R < 0, R_k < 0, D_s <= 0 or D_u <= 0.
  void validate() const;
};

/// Equivocation triple (Δ_s, Δ_u, Δ_su), used for bounds and for targets.
struct Equivocations {
  double s = 0.0;
  double u = 0.0;
  double su = 0.0;
};

/// Lower limits on equivocation used as side constraints; -inf disables one.
inline constexpr Equivocations kNoFloors{-std::numeric_limits<double>::infinity(),
                                         -std::numeric_limits<double>::infinity(),
                                         -std::numeric_limits<double>::infinity()};

struct Slack {
  std::string name;
  double value = 0.0;  // >= 0 when the inequality holds
};

struct FeasibilityReport {
  bool feasible = true;
  double tolerance = kDefaultTolerance;
  std::vector<Slack> slacks;

  void add(std::string name, double value);
  std::optional<double> slack(std::string_view name) const;
  double min_slack() const;
};

enum class SecrecyMode {
  full_semantic,  // Δ_s = h(S), Δ_u = 0, Δ_su = h(S)
  full,           // Δ_s = h(S), Δ_u = h(U), Δ_su = h(S,U)
  none,           // no equivocation demand
};

SecrecyMode parse_secrecy_mode(std::string_view name);
std::string to_string(SecrecyMode mode);

}  // namespace semsec

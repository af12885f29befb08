#pragma once

// Gaussian converse region for an encoder that only observes U.
//
// A point (R, R_k, D_s, D_u, Δ_s, Δ_u, Δ_su) can only be achievable if
//   D_s > η,
//   max{R_u(D_u), R_s(D_s)} <= R C_main,
//   Δ_u  <= R_k + R C_s + ½ ln(2πe D_u),
//   Δ_s  <= R_k + R C_s - ½ ln⁺(P_su² / (2πe P_s P_u (D_s - η))),
//   Δ_su <= R_k + R C_s - max{R_u(D_u), R_s(D_s)} + ½ ln((2πe)² |K|).

#include <vector>

#include "semsec/gauss.hpp"
#include "semsec/parallel.hpp"
#include "semsec/region.hpp"

namespace semsec {

/// Slack names reported by outer_feasible, in order.
namespace outer_slack {
inline constexpr const char* kDsFloor = "D_s_floor";
inline constexpr const char* kRate = "rate";
inline constexpr const char* kDeltaU = "delta_u";
inline constexpr const char* kDeltaS = "delta_s";
inline constexpr const char* kDeltaSU = "delta_su";
}  // namespace outer_slack

/// Evaluates every converse inequality and returns one signed slack per
/// inequality (power units for the D_s floor, nats for the rest).
FeasibilityReport outer_feasible(const RegionPoint& pt, const GaussianSource& src,
                                 const GaussianWiretapChannel& ch,
                                 double tolerance = kDefaultTolerance);

/// Right-hand sides of the three equivocation inequalities, verbatim (no
/// clamping at the source entropies). Throws InfeasibleError naming the violated
/// constraint when D_s <= η or the rate matching condition fails.
Equivocations max_equivocations(double R, double R_k, double d_s, double d_u,
                                const GaussianSource& src, const GaussianWiretapChannel& ch);

/// Equivocation demand for a secrecy mode; the Gaussian source entropies are
/// differential entropies.
Equivocations secrecy_targets(SecrecyMode mode, const GaussianSource& src);

struct OuterGrid {
  std::vector<double> R;
  std::vector<double> D_u;
  /// D_s axis. Its largest value caps the boundary search; the whole axis is
  /// used by surface_outer.
  std::vector<double> D_s;
};

/// One boundary cell; every field after D_u is NaN when the cell is unreachable.
struct OuterTraceRow {
  double R = 0.0;
  double D_u = 0.0;
  double D_s = 0.0;
  Equivocations delta_max;
};

struct OuterSurfaceRow {
  double R = 0.0;
  double D_u = 0.0;
  double D_s = 0.0;
  bool feasible_rate = false;
  Equivocations delta_max;  // NaN where the rate conditions fail
};

/// Absolute D_s resolution of the boundary bisection.
inline constexpr double kOuterBisectionTol = 1e-9;

/// Smallest D_s in (η, d_s_max] at which (R, R_k, D_s, D_u, targets) passes
/// outer_feasible; NaN if even d_s_max fails.
double outer_boundary_ds(const GaussianSource& src, const GaussianWiretapChannel& ch, double R,
                         double R_k, double d_u, const Equivocations& targets, double d_s_max);

/// Boundary D_s for every (R, D_u) cell, rows ordered R-major. Output ordering
/// and values are independent of the execution policy.
std::vector<OuterTraceRow> trace_outer(const GaussianSource& src, const GaussianWiretapChannel& ch,
                                       double R_k, const OuterGrid& grid,
                                       const Equivocations& targets,
                                       Execution exec = Execution::parallel);

/// Δ^max evaluated over the full (R, D_u, D_s) grid.
std::vector<OuterSurfaceRow> surface_outer(const GaussianSource& src,
                                           const GaussianWiretapChannel& ch, double R_k,
                                           const OuterGrid& grid,
                                           Execution exec = Execution::parallel);

/// Throws ConfigError on empty or non-increasing axes.
void validate_grid(const OuterGrid& grid);
void validate_axis(const std::vector<double>& axis, const char* name);

}  // namespace semsec

#pragma once

// Gaussian achievable region for an encoder that sees both S and U.
//
// Auxiliaries (A_c = B_c = ∅):
//   A_p = α1 S + Ã_p,  B_p = α2 U + B̃_p + γ S,
//   Q_p = Q_c + Q̃_p,   W_c = Q_c + W̃_c,   X = Q_c + W̃_c + Q̃_p + X̃,
// with P = P_Qc + P_Q̃p + P_W̃c + P_X̃. γ is carried for the Monte Carlo model
// but does not enter any closed form below.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "semsec/gauss.hpp"
#include "semsec/parallel.hpp"
#include "semsec/region.hpp"

namespace semsec {

struct InnerParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double gamma = 0.0;
  double var_ap = 1.0;  // P_Ãp
  double var_bp = 1.0;  // P_B̃p
  double pow_qc = 0.0;  // P_Qc
  double pow_qp = 0.0;  // P_Q̃p
  double pow_wc = 0.0;  // P_W̃c
  double pow_x = 0.0;   // P_X̃

  double channel_power() const noexcept { return pow_qc + pow_qp + pow_wc + pow_x; }

  /// Throws DomainError on negative/non-finite powers or when the channel
  /// powers do not sum to ch.power (relative tolerance 1e-12).
  void validate(const GaussianWiretapChannel& ch) const;

  /// Channel power split evenly over the four layers.
  static InnerParams equal_split(const GaussianWiretapChannel& ch, double alpha1, double alpha2,
                                 double var_ap, double var_bp);

  friend bool operator==(const InnerParams&, const InnerParams&) = default;
};

struct Distortions {
  double s = 0.0;
  double u = 0.0;
};

namespace inner_slack {
inline constexpr const char* kSemanticMatch = "semantic_match";
inline constexpr const char* kObservedMatch = "observed_match";
}  // namespace inner_slack

/// MMSE distortions of S from A_p and of U from B_p.
/// Throws DegenerateError when a gain and its noise are both zero.
Distortions mmse_distortions(const InnerParams& p, const GaussianSource& src);

/// The two source-channel matching inequalities as slacks in nats:
///   ½[R ln(1 + (P_Qc+P_Q̃p)/(P_W̃c+P_X̃+P_N1)) - ln(1 + α1² P_s/P_Ãp)]
///   ½[R ln((1 + P_W̃c/(P_X̃+P_Q̃p+P_N1))(1 + P_X̃/P_N1)) - ln(1 + α2²|K|/(P_s P_B̃p))]
FeasibilityReport rate_feasible(const InnerParams& p, const GaussianSource& src,
                                const GaussianWiretapChannel& ch, double R,
                                double tolerance = kDefaultTolerance);

/// Per-symbol pieces of the equivocation bounds. The bounds are
/// source_x + R * channel_x, where channel_u also serves Δ_su.
struct InnerTerms {
  double source_s = 0.0;
  double source_u = 0.0;
  double source_su = 0.0;
  double channel_s = 0.0;
  double channel_u = 0.0;
};

/// Throws DegenerateError naming the factor when a log argument is <= 0.
InnerTerms inner_terms(const InnerParams& p, const GaussianSource& src,
                       const GaussianWiretapChannel& ch);

Equivocations inner_equivocations(const InnerParams& p, const GaussianSource& src,
                                  const GaussianWiretapChannel& ch, double R);

struct InnerPoint {
  InnerParams params;
  double R = 0.0;
  Distortions distortion;
  Equivocations delta;
  bool rate_ok = false;
};

/// Evaluates one parameter choice; throws on degenerate parameters.
InnerPoint evaluate_inner(const InnerParams& p, const GaussianSource& src,
                          const GaussianWiretapChannel& ch, double R);

enum class InnerObjective { delta_s, delta_u, delta_su };

InnerObjective parse_inner_objective(std::string_view name);

struct InnerSearchOptions {
  int multistarts = 32;
  int max_evals = 1500;  // per start
  std::uint64_t seed = 1;
  double penalty = 50.0;
  Execution exec = Execution::parallel;
};

/// Multistart Nelder-Mead over InnerParams (γ fixed at 0). Candidates with
/// D_s > caps.s or D_u > caps.u are rejected outright; rate and equivocation-floor
/// violations are penalized during the search, and only points satisfying all of
/// them can become the incumbent. Returns nullopt when no start finds such a
/// point. Warm starts are evaluated as-is and then used as extra starts.
std::optional<InnerPoint> optimize_inner(const GaussianSource& src, const GaussianWiretapChannel& ch,
                                         double R, const Distortions& caps, InnerObjective objective,
                                         const InnerSearchOptions& opts = {},
                                         const Equivocations& floors = kNoFloors,
                                         std::span<const InnerParams> warm_starts = {});

/// Smallest achievable D_s subject to D_u <= d_u_cap, the rate conditions and the
/// equivocation floors. Same search machinery as optimize_inner.
std::optional<InnerPoint> minimize_semantic_distortion(
    const GaussianSource& src, const GaussianWiretapChannel& ch, double R, double d_u_cap,
    const Equivocations& floors, const InnerSearchOptions& opts = {},
    std::span<const InnerParams> warm_starts = {});

struct InnerTraceRow {
  double R = 0.0;
  double D_u = 0.0;
  double D_s = 0.0;  // NaN when unattained
  Equivocations delta;
  InnerParams params;
  bool attained = false;
};

/// Boundary D_s for each (R, D_u) cell, rows ordered R-major. Each D_u column is
/// swept in increasing R and warm-started from the previous cell's optimum.
std::vector<InnerTraceRow> trace_inner(const GaussianSource& src, const GaussianWiretapChannel& ch,
                                       const std::vector<double>& R_grid,
                                       const std::vector<double>& D_u_grid,
                                       const Equivocations& targets,
                                       const InnerSearchOptions& opts = {});

}  // namespace semsec

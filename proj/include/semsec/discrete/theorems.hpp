#pragma once

// Exact evaluators for the discrete converse and achievability inequality
// systems.

#include <cstddef>
#include <vector>

#include "semsec/discrete/blahut_arimoto.hpp"
#include "semsec/discrete/pmf.hpp"
#include "semsec/inner_bound.hpp"
#include "semsec/region.hpp"

namespace semsec::discrete {

namespace converse_slack {
inline constexpr const char* kRateObserved = "rate_observed";
inline constexpr const char* kRateSemantic = "rate_semantic";
inline constexpr const char* kRateJoint = "rate_joint";
inline constexpr const char* kDeltaU = "delta_u";
inline constexpr const char* kDeltaS = "delta_s";
inline constexpr const char* kDeltaSU = "delta_su";
}  // namespace converse_slack

/// Source and channel terms of the converse (nats). An unreachable distortion
/// makes the corresponding rate +inf.
struct ConverseTerms {
  double R_u = 0.0;      // R_u(D_u)
  double R_s = 0.0;      // indirect R_s(D_s)
  double R_joint = 0.0;  // R(D_s, D_u)
  double capacity = 0.0;         // max_{p_x} I(X;Y)
  double secrecy = 0.0;          // max_{p_x} I(X;Y) - I(X;Z)
  double H_S = 0.0;
  double H_U = 0.0;
  double H_SU = 0.0;
};

/// Throws SolverError when a Blahut-Arimoto run does not converge.
ConverseTerms converse_terms(const JointPMF& p_su, const DistortionMatrix& d_s,
                             const DistortionMatrix& d_u, double D_s, double D_u, const DMC& dmc_y,
                             const DMC& dmc_z_given_y, const BAOptions& opts = {});

/// Six slacks: rate_observed, rate_semantic, rate_joint, delta_u, delta_s, delta_su.
FeasibilityReport converse_slacks(const RegionPoint& pt, const ConverseTerms& t,
                                  double tol = kDefaultTolerance);

FeasibilityReport converse_check_discrete(const RegionPoint& pt, const JointPMF& p_su,
                                          const DistortionMatrix& d_s, const DistortionMatrix& d_u,
                                          const DMC& dmc_y, const DMC& dmc_z_given_y,
                                          const BAOptions& opts = {},
                                          double tol = kDefaultTolerance);

// Axis layout of the auxiliary joints.
namespace aux_axis {
inline constexpr std::size_t S = 0, U = 1, Ac = 2, Ap = 3, Bc = 4, Bp = 5;
}
namespace chan_axis {
inline constexpr std::size_t Qc = 0, Qp = 1, Wc = 2, X = 3, Y = 4, Z = 5;
}

/// Every information quantity of the achievability system (nats).
struct AchievabilityTerms {
  // source side
  double I_S_Ac = 0.0;                // I(S; A_c)
  double I_S_AcAp = 0.0;              // I(S; A_c, A_p)
  double I_U_Bc_given_SAc = 0.0;      // I(U; B_c | S, A_c)
  double I_U_Bp_given_SAcApBc = 0.0;  // I(U; B_p | S, A_c, A_p, B_c)
  double I_U_Bc_given_Ac = 0.0;       // I(B_c; U | A_c)
  double H_S_given_AcAp = 0.0;
  double H_U = 0.0;
  double H_SU = 0.0;
  // channel side
  double I_Qc_Y = 0.0;                // I(Q_c; Y)
  double I_QcQp_Y = 0.0;              // I(Y; Q_c, Q_p)
  double I_Wc_Y_given_Qc = 0.0;       // I(W_c; Y | Q_c)
  double I_X_Y_given_QcQpWc = 0.0;    // I(X; Y | Q_c, Q_p, W_c)
  double I_Qp_Y_given_Qc = 0.0;       // I(Q_p; Y | Q_c)
  double H_Z_given_X = 0.0;
  double H_Z_given_Qc = 0.0;
  double H_Z_given_QcWc = 0.0;
};

namespace achievability_slack {
inline constexpr const char* kSemanticCommon = "rate_semantic_common";
inline constexpr const char* kSemanticTotal = "rate_semantic_total";
inline constexpr const char* kObservedCommon = "rate_observed_common";
inline constexpr const char* kObservedTotal = "rate_observed_total";
}  // namespace achievability_slack

struct AchievabilityResult {
  AchievabilityTerms terms;
  double R = 0.0;
  Distortions distortion;    // E d_s(S, S̃), E d_u(U, Ũ)
  Equivocations delta;       // right-hand sides of the three equivocation bounds
  FeasibilityReport rates;   // the four rate inequalities as slacks R·(channel) - (source)
};

/// Reconstruction tables: recon_s[a_c * |A_p| + a_p] = ŝ and
/// recon_u[((a_c * |A_p| + a_p) * |B_c| + b_c) * |B_p| + b_p] = û.
struct ReconMaps {
  std::vector<std::size_t> s;
  std::vector<std::size_t> u;
};

/// Evaluates the system for source auxiliaries `aux` (axes S, U, A_c, A_p, B_c,
/// B_p) and channel auxiliaries `chan_aux` (axes Q_c, Q_p, W_c, X), which are
/// taken independent of each other. When p_su is given its (S, U) marginal must
/// match aux within 1e-9 or ConfigError is thrown.
AchievabilityResult achievability_check_discrete(const JointPMF& aux, const JointPMF& chan_aux,
                                                 const DMC& dmc_y, const DMC& dmc_z_given_y,
                                                 const ReconMaps& recon, const DistortionMatrix& d_s,
                                                 const DistortionMatrix& d_u, double R,
                                                 const JointPMF* p_su = nullptr,
                                                 double tol = kDefaultTolerance);

/// Slacks of a claimed (D_s, D_u, Δ_s, Δ_u, Δ_su) against an evaluated system,
/// together with its rate inequalities.
FeasibilityReport check_claim(const AchievabilityResult& res, double D_s, double D_u,
                              const Equivocations& claimed, double tol = kDefaultTolerance);

}  // namespace semsec::discrete

#pragma once

// Blahut-Arimoto solvers for rate-distortion functions with one or two
// distortion constraints, including the semantic (indirect) variant that
// measures semantic distortion through the modified distortion
//   d̂_s(u, ŝ) = Σ_s p(s|u) d_s(s, ŝ).

#include <vector>

#include "semsec/discrete/pmf.hpp"

namespace semsec::discrete {

struct BAOptions {
  double gap_tol = 1e-9;        // stop when the Blahut upper/lower gap (nats) falls below
  int max_inner = 200000;       // iterations per fixed-multiplier solve
  int max_bisection = 200;
  double bracket_width = 1e-10; // relative multiplier bracket width
  double beta_cap = 1e9;
  double active_tol = 1e-8;     // constraint counted inactive if met with zero multiplier
  double prune = 1e-15;         // conditionals below are zeroed and renormalized
};

struct BAResult {
  double rate = 0.0;                  // nats
  std::vector<double> distortions;    // achieved, one per constraint
  std::vector<double> multipliers;    // slope parameters β_k >= 0
  long iterations = 0;                // total inner iterations
  bool converged = false;
  bool monotone = true;               // objective never increased across iterations
  std::vector<double> output_marginal;
  Matrix conditional;                 // p(y | x)
};

/// min I(X;Y) subject to E d_k(X,Y) <= targets[k] for each k (one or two
/// constraints over a shared reconstruction alphabet). Multipliers are found by
/// geometric bracketing and bisection; with two constraints the search over β_2
/// nests a search over β_1. Throws InfeasibleError when a target is below
/// its minimum achievable distortion.
BAResult ba_rdf(std::span<const double> p_x, const std::vector<DistortionMatrix>& d,
                const std::vector<double>& targets, const BAOptions& opts = {});

/// R_u(D_u) = min I(U; Û) s.t. E d_u(U, Û) <= D_u.
BAResult ba_rdf_classic(std::span<const double> p_u, const DistortionMatrix& d_u, double D_u,
                        const BAOptions& opts = {});

/// R(D_s, D_u) = min I(S,U; Ŝ,Û) over p(ŝ,û | s,u). p_su has axes (S, U);
/// reconstruction letters are flattened as ŝ * |Û| + û.
BAResult ba_rdf_bivariate(const JointPMF& p_su, const DistortionMatrix& d_s,
                          const DistortionMatrix& d_u, double D_s, double D_u,
                          const BAOptions& opts = {});

/// Semantic RDF: min I(U; Ŝ,Û) over p(ŝ,û | u) with E d̂_s(U,Ŝ) <= D_s and
/// E d_u(U,Û) <= D_u.
BAResult ba_rdf_semantic(const JointPMF& p_su, const DistortionMatrix& d_s,
                         const DistortionMatrix& d_u, double D_s, double D_u,
                         const BAOptions& opts = {});

/// Indirect RDF of S seen through U: min I(U; Ŝ) over p(ŝ | u) with E d̂_s <= D_s.
BAResult ba_rdf_indirect(const JointPMF& p_su, const DistortionMatrix& d_s, double D_s,
                         const BAOptions& opts = {});

struct ModifiedDistortion {
  DistortionMatrix d;                 // rows u, cols ŝ
  std::vector<std::size_t> excluded;  // u letters with zero mass (rows left at 0)
};

ModifiedDistortion modified_distortion(const JointPMF& p_su, const DistortionMatrix& d_s);

/// Smallest achievable E d(X, Y): Σ_x p(x) min_y d(x, y).
double min_distortion(std::span<const double> p_x, const DistortionMatrix& d);

}  // namespace semsec::discrete

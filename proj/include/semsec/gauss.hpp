#pragma once

// Closed-form quantities for the bivariate Gaussian semantic source (S, U) and
// the degraded Gaussian wiretap channel Y = X + N1, Z = Y + N2.
//
// Everything returned here is in nats.

#include <limits>

namespace semsec {

/// (S, U) ~ N(0, K) with K = [[var_s, cov_su], [cov_su, var_u]].
struct GaussianSource {
  double var_s = 1.0;
  double var_u = 1.0;
  double cov_su = 0.0;

  /// Throws DomainError unless var_s > 0, var_u > 0 and K is PSD.
  void validate() const;
  double correlation() const noexcept;
};

struct GaussianWiretapChannel {
  double power = 1.0;       // E[X^2] <= power
  double noise_main = 1.0;  // Var(N1)
  double noise_eve = 0.0;   // Var(N2), extra noise seen by the eavesdropper

  void validate() const;
  double noise_total() const noexcept { return noise_main + noise_eve; }
};

/// Sentinel returned by rate functions whose distortion target is unreachable.
inline constexpr double kInfeasibleRate = std::numeric_limits<double>::infinity();

/// max(0, ln x). Arguments in [0, 1] clamp to zero; negative arguments throw.
double log_plus(double x);

/// |K| = var_s var_u - cov_su^2.
double det_cov(const GaussianSource& src);

/// Var(S | U) = var_s - cov_su^2 / var_u; the floor below which no estimate of S
/// computed from U can go.
double eta(const GaussianSource& src);

/// D_s > η, with values within rounding of η (relative 1e-12) counted as on
/// the floor: decimal inputs such as var_s = 0.7, cov = 0.5 put η one ulp
/// below 0.45.
bool above_floor(const GaussianSource& src, double d_s);

double capacity_main(const GaussianWiretapChannel& ch);
double secrecy_capacity(const GaussianWiretapChannel& ch);

/// Gaussian RDF of U under squared error. Throws DomainError for D_u <= 0.
double rdf_observed(const GaussianSource& src, double d_u);

/// Indirect (remote-source) RDF of S when the encoder only sees U.
/// Returns kInfeasibleRate when d_s <= eta(src).
double rdf_semantic_indirect(const GaussianSource& src, double d_s);

double entropy_s(const GaussianSource& src);
double entropy_u(const GaussianSource& src);
/// Throws SingularError when |K| = 0.
double entropy_su(const GaussianSource& src);

/// Differential entropy of a scalar Gaussian of the given variance.
double gaussian_entropy(double variance);

}  // namespace semsec

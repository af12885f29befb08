#pragma once

// Monte Carlo check of the Gaussian achievable construction. Sampled
// auxiliary and channel variables and their linear MMSE estimates are
// compared against covariance algebra.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "semsec/gauss.hpp"
#include "semsec/inner_bound.hpp"
#include "semsec/parallel.hpp"
#include "semsec/units.hpp"

namespace semsec::mc {

struct McConfig {
  std::uint64_t n_samples = 1000000;
  std::uint64_t seed = 1;
  std::uint64_t chunk = 65536;  // samples per independent counter stream
  Execution exec = Execution::parallel;

  void validate() const;
};

/// Reported variables, in covariance order.
inline constexpr std::size_t kReported = 10;
inline const std::array<std::string, kReported> kLabels{"S",   "U",   "A_p", "B_p", "Q_c",
                                                        "Q~p", "W~c", "X~",  "Y",   "Z"};

/// Extended vector: the reported ten followed by Q_p, W_c and X.
inline constexpr std::size_t kExtended = 13;
namespace var {
inline constexpr int S = 0, U = 1, Ap = 2, Bp = 3, Qc = 4, Qpt = 5, Wct = 6, Xt = 7, Y = 8, Z = 9,
                     Qp = 10, Wc = 11, X = 12;
}

/// Exact covariance of the extended vector.
Eigen::MatrixXd analytic_cov(const GaussianSource& src, const GaussianWiretapChannel& ch,
                             const InnerParams& p);

/// ½ ln |Σ_AC| |Σ_BC| / (|Σ_ABC| |Σ_C|) from a covariance; empty `given` means
/// unconditional. Throws SingularError when a block is not positive definite.
double gaussian_mi(const Eigen::MatrixXd& cov, const std::vector<int>& a, const std::vector<int>& b,
                   const std::vector<int>& given = {});
/// h(A | C) in nats.
double gaussian_cond_entropy(const Eigen::MatrixXd& cov, const std::vector<int>& a,
                             const std::vector<int>& given = {});

struct McReport {
  McConfig config;
  double D_s = 0.0;
  double D_u = 0.0;        // Û from B_p
  double D_u_joint = 0.0;  // Û from (A_p, B_p)
  double D_s_closed = 0.0;
  double D_u_closed = 0.0;
  double D_u_joint_closed = 0.0;
  std::array<double, kReported> mean{};
  Eigen::MatrixXd cov;           // (1/n) Σ x xᵀ, the known-zero-mean estimator
  Eigen::MatrixXd cov_analytic;  // reported block of analytic_cov
  double max_rel_dev = 0.0;      // max |Δ_ij| / sqrt(Σ_ii Σ_jj)
  double max_z = 0.0;            // max |Δ_ij| / SE_ij
  std::vector<std::string> warnings;
};

/// Deterministic for a fixed (seed, chunk); serial and parallel runs agree bit for bit.
/// Throws NumericError on a nonfinite draw.
McReport sample_system(const GaussianSource& src, const GaussianWiretapChannel& ch,
                       const InnerParams& p, const McConfig& cfg);

struct NamedValue {
  std::string name;
  double value = 0.0;
};

/// Closed-form distortions and the log expressions of the achievable region.
struct ClosedForms {
  double D_s = 0.0;
  double D_u = 0.0;
  double D_u_joint = 0.0;
  std::vector<NamedValue> terms;        // checked against log-dets
  std::vector<NamedValue> diagnostics;  // reported, not checked
};

ClosedForms closed_forms(const GaussianSource& src, const GaussianWiretapChannel& ch,
                         const InnerParams& p);

/// The same terms evaluated from analytic_cov by log-det ratios.
ClosedForms logdet_forms(const GaussianSource& src, const GaussianWiretapChannel& ch,
                         const InnerParams& p);

struct TermCheck {
  std::string name;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct ValidationReport {
  bool pass = true;
  std::vector<TermCheck> checks;
  std::vector<TermCheck> diagnostics;
  std::vector<std::string> warnings;
  McReport mc;

  /// Names of failed checks with expected/observed values, one per line.
  std::string diff() const;
};

inline constexpr double kTermTolerance = 1e-9;
inline constexpr double kSigmas = 5.0;
inline constexpr std::uint64_t kMinStatSamples = 100;

/// Compares a Monte Carlo report and log-det terms against closed forms.
ValidationReport check_against(const McReport& mc, const ClosedForms& expected,
                               const ClosedForms& logdet);

ValidationReport validate_inner_point(const GaussianSource& src, const GaussianWiretapChannel& ch,
                                      const InnerParams& p, double R, const McConfig& cfg);

/// Information-valued fields are expressed in `base`.
nlohmann::json to_json(const McReport& r);
nlohmann::json to_json(const ValidationReport& r, LogBase base);

}  // namespace semsec::mc

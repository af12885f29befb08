#include "semsec/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "semsec/errors.hpp"

namespace semsec {

namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

}  // namespace

void GaussianSource::validate() const {
  require_finite(var_s, "var_s");
  require_finite(var_u, "var_u");
  require_finite(cov_su, "cov_su");
  if (var_s <= 0.0) throw DomainError("source variance var_s must be > 0");
  if (var_u <= 0.0) throw DomainError("source variance var_u must be > 0");
  // Relative slack so that exactly-singular sources (cov_su^2 == var_s var_u)
  // survive rounding of sqrt.
  if (cov_su * cov_su > var_s * var_u * (1.0 + 1e-12))
    throw DomainError("source covariance is not positive semidefinite");
}

double GaussianSource::correlation() const noexcept { return cov_su / std::sqrt(var_s * var_u); }

void GaussianWiretapChannel::validate() const {
  require_finite(power, "power");
  require_finite(noise_main, "noise_main");
  require_finite(noise_eve, "noise_eve");
  if (power < 0.0) throw DomainError("channel power must be >= 0");
  if (noise_main <= 0.0) throw DomainError("main channel noise must be > 0");
  if (noise_eve < 0.0) throw DomainError("eavesdropper noise must be >= 0");
}

double log_plus(double x) {
  if (std::isnan(x) || x < 0.0) throw DomainError("log+ of a negative argument");
  return x <= 1.0 ? 0.0 : std::log(x);
}

double det_cov(const GaussianSource& src) {
  return std::max(0.0, src.var_s * src.var_u - src.cov_su * src.cov_su);
}

double eta(const GaussianSource& src) {
  const double v = src.var_s - src.cov_su * src.cov_su / src.var_u;
  return std::clamp(v, 0.0, src.var_s);
}

bool above_floor(const GaussianSource& src, double d_s) {
  const double floor = eta(src);
  return d_s > floor + 1e-12 * std::max(1.0, floor);
}

double capacity_main(const GaussianWiretapChannel& ch) {
  return 0.5 * std::log1p(ch.power / ch.noise_main);
}

double secrecy_capacity(const GaussianWiretapChannel& ch) {
  const double pn = ch.noise_total();
  const double ratio = pn * (ch.power + ch.noise_main) / (ch.noise_main * (ch.power + pn));
  return std::max(0.0, 0.5 * std::log(ratio));
}

double rdf_observed(const GaussianSource& src, double d_u) {
  if (!(d_u > 0.0)) throw DomainError("observation distortion D_u must be > 0");
  return 0.5 * log_plus(src.var_u / d_u);
}

double rdf_semantic_indirect(const GaussianSource& src, double d_s) {
  if (!above_floor(src, d_s)) return kInfeasibleRate;
  return 0.5 * log_plus(src.cov_su * src.cov_su / (src.var_u * (d_s - eta(src))));
}

double gaussian_entropy(double variance) {
  if (!(variance > 0.0)) throw DomainError("Gaussian entropy needs a positive variance");
  return 0.5 * std::log(kTwoPiE * variance);
}

double entropy_s(const GaussianSource& src) { return gaussian_entropy(src.var_s); }

double entropy_u(const GaussianSource& src) { return gaussian_entropy(src.var_u); }

double entropy_su(const GaussianSource& src) {
  const double det = det_cov(src);
  if (!(det > 0.0)) throw SingularError("joint entropy of a singular source covariance");
  return 0.5 * std::log(kTwoPiE * kTwoPiE * det);
}

}  // namespace semsec

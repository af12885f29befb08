#include "semsec/outer_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "semsec/errors.hpp"

namespace semsec {

namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Δ^max without precondition checks; D_s <= η gives -inf for Δ_s and Δ_su.
Equivocations raw_bounds(double R, double R_k, double d_s, double d_u, const GaussianSource& src,
                         const GaussianWiretapChannel& ch) {
  const double base = R_k + R * secrecy_capacity(ch);
  const double floor = eta(src);
  const double r_u = rdf_observed(src, d_u);
  const double r_s = rdf_semantic_indirect(src, d_s);

  Equivocations out;
  out.u = base + 0.5 * std::log(kTwoPiE * d_u);
  if (above_floor(src, d_s)) {
    const double arg = src.cov_su * src.cov_su / (kTwoPiE * src.var_s * src.var_u * (d_s - floor));
    out.s = base - 0.5 * log_plus(arg);
    out.su = base - std::max(r_u, r_s) + 0.5 * std::log(kTwoPiE * kTwoPiE * det_cov(src));
  } else {
    out.s = kNegInf;
    out.su = kNegInf;
  }
  return out;
}

}  // namespace

void validate_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw ConfigError(std::string("grid axis ") + name + " is empty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i])) throw ConfigError(std::string("grid axis ") + name + " has a non-finite value");
    if (i > 0 && !(axis[i] > axis[i - 1]))
      throw ConfigError(std::string("grid axis ") + name + " is not strictly increasing");
  }
}

void validate_grid(const OuterGrid& grid) {
  validate_axis(grid.R, "R");
  validate_axis(grid.D_u, "D_u");
  validate_axis(grid.D_s, "D_s");
  if (grid.R.front() < 0.0) throw ConfigError("grid axis R must be >= 0");
  if (grid.D_u.front() <= 0.0) throw ConfigError("grid axis D_u must be > 0");
  if (grid.D_s.front() <= 0.0) throw ConfigError("grid axis D_s must be > 0");
}

FeasibilityReport outer_feasible(const RegionPoint& pt, const GaussianSource& src,
                                 const GaussianWiretapChannel& ch, double tolerance) {
  src.validate();
  ch.validate();
  pt.validate();

  FeasibilityReport rep;
  rep.tolerance = tolerance;
  const double floor = eta(src);
  rep.add(outer_slack::kDsFloor, pt.D_s - floor);

  const double needed = std::max(rdf_observed(src, pt.D_u), rdf_semantic_indirect(src, pt.D_s));
  const double offered = pt.R * capacity_main(ch);
  rep.add(outer_slack::kRate, std::isinf(needed) ? kNegInf : offered - needed);

  const Equivocations bound = raw_bounds(pt.R, pt.R_k, pt.D_s, pt.D_u, src, ch);
  rep.add(outer_slack::kDeltaU, bound.u - pt.delta_u);
  rep.add(outer_slack::kDeltaS, bound.s - pt.delta_s);
  rep.add(outer_slack::kDeltaSU, bound.su - pt.delta_su);
  // The D_s floor is strict.
  if (!above_floor(src, pt.D_s)) rep.feasible = false;
  return rep;
}

Equivocations max_equivocations(double R, double R_k, double d_s, double d_u,
                                const GaussianSource& src, const GaussianWiretapChannel& ch) {
  src.validate();
  ch.validate();
  if (!above_floor(src, d_s))
    throw InfeasibleError("infeasible point: D_s_floor violated (D_s <= eta)");
  const double needed = std::max(rdf_observed(src, d_u), rdf_semantic_indirect(src, d_s));
  if (needed > R * capacity_main(ch) + kDefaultTolerance)
    throw InfeasibleError("infeasible point: rate condition violated (source rate exceeds R * C_main)");
  return raw_bounds(R, R_k, d_s, d_u, src, ch);
}

Equivocations secrecy_targets(SecrecyMode mode, const GaussianSource& src) {
  switch (mode) {
    case SecrecyMode::full_semantic: return {entropy_s(src), 0.0, entropy_s(src)};
    case SecrecyMode::full: return {entropy_s(src), entropy_u(src), entropy_su(src)};
    case SecrecyMode::none: return {kNegInf, kNegInf, kNegInf};
  }
  return kNoFloors;
}

double outer_boundary_ds(const GaussianSource& src, const GaussianWiretapChannel& ch, double R,
                         double R_k, double d_u, const Equivocations& targets, double d_s_max) {
  auto feasible = [&](double d_s) {
    const RegionPoint pt{R, R_k, d_s, d_u, targets.s, targets.u, targets.su};
    return outer_feasible(pt, src, ch, 0.0).feasible;
  };
  if (!feasible(d_s_max)) return kNaN;
  // Feasibility is monotone in D_s: every bound is nondecreasing in D_s.
  double lo = eta(src);
  double hi = d_s_max;
  while (hi - lo > kOuterBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<OuterTraceRow> trace_outer(const GaussianSource& src, const GaussianWiretapChannel& ch,
                                       double R_k, const OuterGrid& grid,
                                       const Equivocations& targets, Execution exec) {
  src.validate();
  ch.validate();
  validate_grid(grid);
  const double d_s_max = grid.D_s.back();
  const std::size_t n_r = grid.R.size();
  const std::size_t n_u = grid.D_u.size();
  std::vector<OuterTraceRow> rows(n_r * n_u);

  auto cell = [&](std::size_t idx) {
    const double R = grid.R[idx / n_u];
    const double d_u = grid.D_u[idx % n_u];
    OuterTraceRow row{R, d_u, kNaN, {kNaN, kNaN, kNaN}};
    const double d_s = outer_boundary_ds(src, ch, R, R_k, d_u, targets, d_s_max);
    if (!std::isnan(d_s)) {
      row.D_s = d_s;
      row.delta_max = raw_bounds(R, R_k, d_s, d_u, src, ch);
    }
    rows[idx] = row;
  };

  const auto total = static_cast<std::ptrdiff_t>(rows.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < total; ++i) cell(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < total; ++i) cell(static_cast<std::size_t>(i));
  }
  return rows;
}

std::vector<OuterSurfaceRow> surface_outer(const GaussianSource& src,
                                           const GaussianWiretapChannel& ch, double R_k,
                                           const OuterGrid& grid, Execution exec) {
  src.validate();
  ch.validate();
  validate_grid(grid);
  const std::size_t n_u = grid.D_u.size();
  const std::size_t n_s = grid.D_s.size();
  std::vector<OuterSurfaceRow> rows(grid.R.size() * n_u * n_s);

  auto cell = [&](std::size_t idx) {
    OuterSurfaceRow row;
    row.R = grid.R[idx / (n_u * n_s)];
    row.D_u = grid.D_u[(idx / n_s) % n_u];
    row.D_s = grid.D_s[idx % n_s];
    const double needed = std::max(rdf_observed(src, row.D_u), rdf_semantic_indirect(src, row.D_s));
    row.feasible_rate = above_floor(src, row.D_s) && needed <= row.R * capacity_main(ch);
    row.delta_max = row.feasible_rate ? raw_bounds(row.R, R_k, row.D_s, row.D_u, src, ch)
                                      : Equivocations{kNaN, kNaN, kNaN};
    rows[idx] = row;
  };

  const auto total = static_cast<std::ptrdiff_t>(rows.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) cell(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < total; ++i) cell(static_cast<std::size_t>(i));
  }
  return rows;
}

}  // namespace semsec

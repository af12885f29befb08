#include "semsec/inner_bound.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "semsec/errors.hpp"
#include "semsec/nelder_mead.hpp"
#include "semsec/outer_bound.hpp"
#include "semsec/philox.hpp"

namespace semsec {

namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double checked_log(double arg, const char* factor) {
  if (!(arg > 0.0) || !std::isfinite(arg))
    throw DegenerateError(std::string("degenerate parameters: nonpositive log argument in ") + factor);
  return std::log(arg);
}

}  // namespace

void InnerParams::validate(const GaussianWiretapChannel& ch) const {
  const std::array<double, 9> all{alpha1, alpha2, gamma, var_ap, var_bp, pow_qc, pow_qp, pow_wc, pow_x};
  for (double v : all)
    if (!std::isfinite(v)) throw DomainError("inner parameters must be finite");
  for (double v : {var_ap, var_bp, pow_qc, pow_qp, pow_wc, pow_x})
    if (v < 0.0) throw DomainError("inner parameter powers must be >= 0");
  if (std::abs(channel_power() - ch.power) > 1e-12 * std::max(1.0, ch.power))
    throw DomainError("channel layer powers must sum to the power limit P");
}

InnerParams InnerParams::equal_split(const GaussianWiretapChannel& ch, double alpha1, double alpha2,
                                     double var_ap, double var_bp) {
  const double q = ch.power / 4.0;
  return {alpha1, alpha2, 0.0, var_ap, var_bp, q, q, q, q};
}

Distortions mmse_distortions(const InnerParams& p, const GaussianSource& src) {
  const double den_s = p.alpha1 * p.alpha1 * src.var_s + p.var_ap;
  const double den_u = p.alpha2 * p.alpha2 * src.var_u + p.var_bp;
  if (!(den_s > 0.0)) throw DegenerateError("degenerate estimator: alpha1^2 P_s + P_Ap = 0");
  if (!(den_u > 0.0)) throw DegenerateError("degenerate estimator: alpha2^2 P_u + P_Bp = 0");
  const double a1 = p.alpha1 * p.alpha1;
  const double a2 = p.alpha2 * p.alpha2;
  return {src.var_s - a1 * src.var_s * src.var_s / den_s,
          src.var_u - a2 * src.var_u * src.var_u / den_u};
}

FeasibilityReport rate_feasible(const InnerParams& p, const GaussianSource& src,
                                const GaussianWiretapChannel& ch, double R, double tolerance) {
  if (!(p.var_ap > 0.0)) throw DegenerateError("degenerate parameters: P_Ap must be > 0");
  if (!(p.var_bp > 0.0)) throw DegenerateError("degenerate parameters: P_Bp must be > 0");
  const double n1 = ch.noise_main;
  const double lhs1 = std::log1p(p.alpha1 * p.alpha1 * src.var_s / p.var_ap);
  const double rhs1 = std::log1p((p.pow_qc + p.pow_qp) / (p.pow_wc + p.pow_x + n1));
  const double lhs2 = std::log1p(p.alpha2 * p.alpha2 * det_cov(src) / (src.var_s * p.var_bp));
  const double rhs2 = std::log1p(p.pow_wc / (p.pow_x + p.pow_qp + n1)) + std::log1p(p.pow_x / n1);

  FeasibilityReport rep;
  rep.tolerance = tolerance;
  rep.add(inner_slack::kSemanticMatch, 0.5 * (R * rhs1 - lhs1));
  rep.add(inner_slack::kObservedMatch, 0.5 * (R * rhs2 - lhs2));
  return rep;
}

InnerTerms inner_terms(const InnerParams& p, const GaussianSource& src,
                       const GaussianWiretapChannel& ch) {
  const double k = det_cov(src);
  const double ps = src.var_s;
  const double n1 = ch.noise_main;
  const double pn = ch.noise_total();
  const double den_a = p.alpha1 * p.alpha1 * ps + p.var_ap;
  const double den_b = p.alpha2 * p.alpha2 * k + ps * p.var_bp;
  if (!(den_a > 0.0)) throw DegenerateError("degenerate parameters: alpha1^2 P_s + P_Ap = 0");
  if (!(den_b > 0.0)) throw DegenerateError("degenerate parameters: alpha2^2 |K| + P_s P_Bp = 0");

  InnerTerms t;
  t.source_s = 0.5 * checked_log(kTwoPiE * ps * p.var_ap / den_a, "P_s P_Ap / (alpha1^2 P_s + P_Ap)");
  t.source_u = 0.5 * checked_log(kTwoPiE * ps * src.var_u * p.var_ap * p.var_bp / (den_a * den_b),
                                 "P_s P_u P_Ap P_Bp");
  t.source_su = 0.5 * checked_log(kTwoPiE * kTwoPiE * k * ps * p.var_ap * p.var_bp / (den_a * den_b),
                                  "|K| P_s P_Ap P_Bp");

  const double rest = ch.power - p.pow_qc;
  t.channel_s = 0.5 * checked_log(pn * rest / ((p.pow_wc + p.pow_x + n1) * (rest + pn)), "P - P_Qc");
  const double num_u = pn * (p.pow_x + n1) * (p.pow_qp + p.pow_wc + p.pow_x + n1);
  const double den_u = n1 * (p.pow_wc + p.pow_x + n1) * (p.pow_qp + p.pow_x + pn);
  t.channel_u = 0.5 * checked_log(num_u / den_u, "observation channel term");
  return t;
}

Equivocations inner_equivocations(const InnerParams& p, const GaussianSource& src,
                                  const GaussianWiretapChannel& ch, double R) {
  const InnerTerms t = inner_terms(p, src, ch);
  return {t.source_s + R * t.channel_s, t.source_u + R * t.channel_u,
          t.source_su + R * t.channel_u};
}

InnerPoint evaluate_inner(const InnerParams& p, const GaussianSource& src,
                          const GaussianWiretapChannel& ch, double R) {
  InnerPoint pt;
  pt.params = p;
  pt.R = R;
  pt.distortion = mmse_distortions(p, src);
  pt.delta = inner_equivocations(p, src, ch, R);
  pt.rate_ok = rate_feasible(p, src, ch, R, 0.0).feasible;
  return pt;
}

InnerObjective parse_inner_objective(std::string_view name) {
  if (name == "delta_s") return InnerObjective::delta_s;
  if (name == "delta_u") return InnerObjective::delta_u;
  if (name == "delta_su") return InnerObjective::delta_su;
  throw ConfigError("unknown inner objective '" + std::string(name) + "'");
}

namespace {

// Search space: α1, α2, ln P_Ãp, ln P_B̃p and three softmax logits for
// (P_Qc, P_Q̃p, P_W̃c); the P_X̃ logit is pinned at zero.
constexpr std::size_t kDim = 7;

struct Box {
  double lo, hi;
};
constexpr std::array<Box, kDim> kSeedBox{{{0.0, 3.0},
                                          {0.0, 3.0},
                                          {-6.9, 1.1},
                                          {-6.9, 1.1},
                                          {-4.0, 4.0},
                                          {-4.0, 4.0},
                                          {-4.0, 4.0}}};
constexpr std::array<int, kDim> kHaltonBases{2, 3, 5, 7, 11, 13, 17};

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

InnerParams decode(std::span<const double> z, double power) {
  InnerParams p;
  p.alpha1 = z[0];
  p.alpha2 = z[1];
  p.var_ap = std::exp(z[2]);
  p.var_bp = std::exp(z[3]);
  const double m = std::max({z[4], z[5], z[6], 0.0});
  const double e0 = std::exp(z[4] - m), e1 = std::exp(z[5] - m), e2 = std::exp(z[6] - m),
               e3 = std::exp(-m);
  const double sum = e0 + e1 + e2 + e3;
  p.pow_qc = power * e0 / sum;
  p.pow_qp = power * e1 / sum;
  p.pow_wc = power * e2 / sum;
  p.pow_x = power * e3 / sum;
  return p;
}

std::vector<double> encode(const InnerParams& p, double power) {
  auto logit = [&](double v) {
    const double x = std::max(p.pow_x, 1e-300 * power);
    return std::log(std::max(v, 1e-300 * power) / x);
  };
  return {p.alpha1,
          p.alpha2,
          std::log(std::max(p.var_ap, 1e-300)),
          std::log(std::max(p.var_bp, 1e-300)),
          logit(p.pow_qc),
          logit(p.pow_qp),
          logit(p.pow_wc)};
}

auto param_tuple(const InnerParams& p) {
  return std::make_tuple(p.alpha1, p.alpha2, p.gamma, p.var_ap, p.var_bp, p.pow_qc, p.pow_qp,
                         p.pow_wc, p.pow_x);
}

struct Candidate {
  InnerPoint point;
  double score = -kInf;
  bool valid = false;
};

// Larger score wins; ties go to the lexicographically smaller parameter vector so
// the reduction over starts does not depend on evaluation order.
bool better(const Candidate& a, const Candidate& b) {
  if (!a.valid) return false;
  if (!b.valid) return true;
  if (a.score != b.score) return a.score > b.score;
  return param_tuple(a.point.params) < param_tuple(b.point.params);
}

struct Problem {
  const GaussianSource& src;
  const GaussianWiretapChannel& ch;
  double R;
  Distortions caps;
  Equivocations floors;
  std::function<double(const Distortions&, const Equivocations&)> score;
};

// Scores one parameter vector. Returns +inf for rejected points; records the
// point in `best` when it satisfies every constraint.
double penalized_cost(const Problem& pb, const InnerParams& p, double penalty, Candidate& best) {
  Distortions d;
  Equivocations delta;
  double s1 = 0.0, s2 = 0.0;
  try {
    d = mmse_distortions(p, pb.src);
    if (d.s > pb.caps.s || d.u > pb.caps.u) return kInf;
    const auto rates = rate_feasible(p, pb.src, pb.ch, pb.R, 0.0);
    s1 = rates.slacks[0].value;
    s2 = rates.slacks[1].value;
    delta = inner_equivocations(p, pb.src, pb.ch, pb.R);
  } catch (const DegenerateError&) {
    return kInf;
  }
  const double viol = std::max(0.0, -s1) + std::max(0.0, -s2) +
                      std::max(0.0, pb.floors.s - delta.s) + std::max(0.0, pb.floors.u - delta.u) +
                      std::max(0.0, pb.floors.su - delta.su);
  const double score = pb.score(d, delta);
  if (!std::isfinite(score)) return kInf;
  if (viol == 0.0) {
    Candidate c{{p, pb.R, d, delta, true}, score, true};
    if (better(c, best)) best = c;
  }
  return -score + penalty * viol;
}

// Moves a seed inside the distortion caps by raising the description SNR.
void repair_seed(InnerParams& p, const Problem& pb) {
  auto fix = [](double& alpha, double& var, double prior, double cap) {
    if (cap >= prior) return;
    const double snr_min = (prior - cap) / cap;  // α² prior / var needed
    if (alpha * alpha * prior / var >= snr_min * (1.0 + 1e-6)) return;
    if (std::abs(alpha) < 1e-3) alpha = 1.0;
    var = alpha * alpha * prior / (snr_min * 1.01);
  };
  fix(p.alpha1, p.var_ap, pb.src.var_s, pb.caps.s);
  fix(p.alpha2, p.var_bp, pb.src.var_u, pb.caps.u);
}

std::optional<InnerPoint> search(const Problem& pb, const InnerSearchOptions& opts,
                                 std::span<const InnerParams> warm_starts) {
  pb.src.validate();
  pb.ch.validate();
  if (!(pb.R >= 0.0)) throw DomainError("R must be >= 0");
  if (opts.multistarts < 0 || opts.max_evals < 1) throw ConfigError("invalid optimizer options");

  // Cranley-Patterson rotation of a Halton sequence, keyed by the seed.
  std::array<double, kDim> shift{};
  PhiloxStream rng(opts.seed, 0x1a2b3c4du, 0u);
  for (auto& s : shift) s = rng.uniform();

  const std::size_t n_warm = warm_starts.size();
  const std::size_t n_starts = n_warm + static_cast<std::size_t>(opts.multistarts);
  std::vector<Candidate> per_start(n_starts);

  auto run_start = [&](std::size_t k) {
    Candidate best;
    std::vector<double> z0;
    if (k < n_warm) {
      const InnerParams& w = warm_starts[k];
      penalized_cost(pb, w, opts.penalty, best);
      z0 = encode(w, pb.ch.power);
    } else {
      const std::uint64_t index = k - n_warm + 1;
      z0.resize(kDim);
      for (std::size_t j = 0; j < kDim; ++j) {
        double u = radical_inverse(index, kHaltonBases[j]) + shift[j];
        u -= std::floor(u);
        z0[j] = kSeedBox[j].lo + u * (kSeedBox[j].hi - kSeedBox[j].lo);
      }
      InnerParams p = decode(z0, pb.ch.power);
      repair_seed(p, pb);
      z0[0] = p.alpha1;
      z0[1] = p.alpha2;
      z0[2] = std::log(p.var_ap);
      z0[3] = std::log(p.var_bp);
    }
    auto f = [&](std::span<const double> z) {
      return penalized_cost(pb, decode(z, pb.ch.power), opts.penalty, best);
    };
    NelderMeadOptions nm;
    nm.max_evals = opts.max_evals;
    nm.initial_step = k < n_warm ? 0.1 : 0.5;
    nelder_mead(f, z0, nm);
    per_start[k] = best;
  };

  const auto total = static_cast<std::ptrdiff_t>(n_starts);
  if (opts.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < total; ++k) run_start(static_cast<std::size_t>(k));
  } else {
    for (std::ptrdiff_t k = 0; k < total; ++k) run_start(static_cast<std::size_t>(k));
  }

  Candidate best;
  for (const auto& c : per_start)
    if (better(c, best)) best = c;
  if (!best.valid) return std::nullopt;
  return best.point;
}

}  // namespace

std::optional<InnerPoint> optimize_inner(const GaussianSource& src, const GaussianWiretapChannel& ch,
                                         double R, const Distortions& caps, InnerObjective objective,
                                         const InnerSearchOptions& opts, const Equivocations& floors,
                                         std::span<const InnerParams> warm_starts) {
  if (!(caps.s > 0.0) || !(caps.u > 0.0))
    throw ConfigError("distortion targets must be > 0");
  Problem pb{src, ch, R, caps, floors, nullptr};
  switch (objective) {
    case InnerObjective::delta_s: pb.score = [](const Distortions&, const Equivocations& e) { return e.s; }; break;
    case InnerObjective::delta_u: pb.score = [](const Distortions&, const Equivocations& e) { return e.u; }; break;
    case InnerObjective::delta_su: pb.score = [](const Distortions&, const Equivocations& e) { return e.su; }; break;
  }
  return search(pb, opts, warm_starts);
}

std::optional<InnerPoint> minimize_semantic_distortion(const GaussianSource& src,
                                                       const GaussianWiretapChannel& ch, double R,
                                                       double d_u_cap, const Equivocations& floors,
                                                       const InnerSearchOptions& opts,
                                                       std::span<const InnerParams> warm_starts) {
  if (!(d_u_cap > 0.0)) throw ConfigError("D_u target must be > 0");
  const double scale = src.var_s;
  Problem pb{src, ch, R, {kInf, d_u_cap}, floors,
             [scale](const Distortions& d, const Equivocations&) { return -d.s / scale; }};
  return search(pb, opts, warm_starts);
}

std::vector<InnerTraceRow> trace_inner(const GaussianSource& src, const GaussianWiretapChannel& ch,
                                       const std::vector<double>& R_grid,
                                       const std::vector<double>& D_u_grid,
                                       const Equivocations& targets,
                                       const InnerSearchOptions& opts) {
  src.validate();
  ch.validate();
  validate_axis(R_grid, "R");
  validate_axis(D_u_grid, "D_u");
  if (R_grid.front() < 0.0) throw ConfigError("grid axis R must be >= 0");
  if (D_u_grid.front() <= 0.0) throw ConfigError("grid axis D_u must be > 0");

  const std::size_t n_r = R_grid.size();
  const std::size_t n_u = D_u_grid.size();
  std::vector<InnerTraceRow> rows(n_r * n_u);

  InnerSearchOptions cell_opts = opts;
  cell_opts.exec = Execution::serial;

  auto column = [&](std::size_t j) {
    std::vector<InnerParams> warm;
    for (std::size_t i = 0; i < n_r; ++i) {
      InnerTraceRow row;
      row.R = R_grid[i];
      row.D_u = D_u_grid[j];
      row.D_s = kNaN;
      row.delta = {kNaN, kNaN, kNaN};
      const auto best = minimize_semantic_distortion(src, ch, row.R, row.D_u, targets, cell_opts, warm);
      if (best) {
        row.D_s = best->distortion.s;
        row.delta = best->delta;
        row.params = best->params;
        row.attained = true;
        warm.assign(1, best->params);
      }
      rows[i * n_u + j] = row;
    }
  };

  const auto total = static_cast<std::ptrdiff_t>(n_u);
  if (opts.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t j = 0; j < total; ++j) column(static_cast<std::size_t>(j));
  } else {
    for (std::ptrdiff_t j = 0; j < total; ++j) column(static_cast<std::size_t>(j));
  }
  return rows;
}

}  // namespace semsec

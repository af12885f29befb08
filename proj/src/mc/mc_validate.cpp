#include "semsec/mc/mc_validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "semsec/errors.hpp"
#include "semsec/philox.hpp"

namespace semsec::mc {

namespace {

constexpr std::size_t kBase = 10;  // S, U, Ã_p, B̃_p, Q_c, Q̃_p, W̃_c, X̃, N1, N2
constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

Eigen::MatrixXd linear_map(const InnerParams& p) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(kExtended, kBase);
  L(var::S, 0) = 1.0;
  L(var::U, 1) = 1.0;
  L(var::Ap, 0) = p.alpha1;
  L(var::Ap, 2) = 1.0;
  L(var::Bp, 0) = p.gamma;
  L(var::Bp, 1) = p.alpha2;
  L(var::Bp, 3) = 1.0;
  L(var::Qc, 4) = 1.0;
  L(var::Qpt, 5) = 1.0;
  L(var::Wct, 6) = 1.0;
  L(var::Xt, 7) = 1.0;
  for (int k : {4, 5, 6, 7}) L(var::X, k) = 1.0;
  L.row(var::Y) = L.row(var::X);
  L(var::Y, 8) = 1.0;
  L.row(var::Z) = L.row(var::Y);
  L(var::Z, 9) = 1.0;
  L(var::Qp, 4) = L(var::Qp, 5) = 1.0;
  L(var::Wc, 4) = L(var::Wc, 6) = 1.0;
  return L;
}

Eigen::MatrixXd base_cov(const GaussianSource& src, const GaussianWiretapChannel& ch,
                         const InnerParams& p) {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(kBase, kBase);
  B(0, 0) = src.var_s;
  B(1, 1) = src.var_u;
  B(0, 1) = B(1, 0) = src.cov_su;
  B(2, 2) = p.var_ap;
  B(3, 3) = p.var_bp;
  B(4, 4) = p.pow_qc;
  B(5, 5) = p.pow_qp;
  B(6, 6) = p.pow_wc;
  B(7, 7) = p.pow_x;
  B(8, 8) = ch.noise_main;
  B(9, 9) = ch.noise_eve;
  return B;
}

double log_det(const Eigen::MatrixXd& cov, const std::vector<int>& idx) {
  if (idx.empty()) return 0.0;
  Eigen::MatrixXd block(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) block(i, j) = cov(idx[i], idx[j]);
  Eigen::LLT<Eigen::MatrixXd> llt(block);
  if (llt.info() != Eigen::Success) {
    std::string names;
    for (int i : idx) names += (names.empty() ? "" : ",") + std::to_string(i);
    throw SingularError("covariance block {" + names + "} is not positive definite");
  }
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) acc += 2.0 * std::log(l(i, i));
  return acc;
}

std::vector<int> join(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Linear MMSE coefficients of target on the given observations.
Eigen::VectorXd mmse_coeffs(const Eigen::MatrixXd& cov, int target, const std::vector<int>& obs) {
  Eigen::MatrixXd so(obs.size(), obs.size());
  Eigen::VectorXd st(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    st(i) = cov(target, obs[i]);
    for (std::size_t j = 0; j < obs.size(); ++j) so(i, j) = cov(obs[i], obs[j]);
  }
  // Pseudo-inverse handles a zero-variance observation (estimator ignores it).
  return so.completeOrthogonalDecomposition().solve(st);
}

double mmse_error(const Eigen::MatrixXd& cov, int target, const std::vector<int>& obs) {
  const Eigen::VectorXd w = mmse_coeffs(cov, target, obs);
  double acc = cov(target, target);
  for (std::size_t i = 0; i < obs.size(); ++i) acc -= w(i) * cov(target, obs[i]);
  return std::max(0.0, acc);
}

struct Partial {
  std::array<double, kReported> sum{};
  std::array<double, kReported * kReported> outer{};
  double err_s = 0.0, err_u = 0.0, err_uj = 0.0;
  bool finite = true;
};

}  // namespace

void McConfig::validate() const {
  if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
  if (chunk < 1) throw ConfigError("chunk must be >= 1");
  if (chunk > 0xFFFFFFFFull) throw ConfigError("chunk must fit in 32 bits");
}

Eigen::MatrixXd analytic_cov(const GaussianSource& src, const GaussianWiretapChannel& ch,
                             const InnerParams& p) {
  src.validate();
  ch.validate();
  p.validate(ch);
  const Eigen::MatrixXd L = linear_map(p);
  return L * base_cov(src, ch, p) * L.transpose();
}

double gaussian_mi(const Eigen::MatrixXd& cov, const std::vector<int>& a, const std::vector<int>& b,
                   const std::vector<int>& given) {
  const double v = 0.5 * (log_det(cov, join(a, given)) + log_det(cov, join(b, given)) -
                          log_det(cov, join(join(a, b), given)) - log_det(cov, given));
  return std::max(0.0, v);
}

double gaussian_cond_entropy(const Eigen::MatrixXd& cov, const std::vector<int>& a,
                             const std::vector<int>& given) {
  return 0.5 * (static_cast<double>(a.size()) * std::log(kTwoPiE) + log_det(cov, join(a, given)) -
                log_det(cov, given));
}

McReport sample_system(const GaussianSource& src, const GaussianWiretapChannel& ch,
                       const InnerParams& p, const McConfig& cfg) {
  cfg.validate();
  const Eigen::MatrixXd full = analytic_cov(src, ch, p);
  const Eigen::MatrixXd L = linear_map(p);

  const Eigen::VectorXd w_s = mmse_coeffs(full, var::S, {var::Ap});
  const Eigen::VectorXd w_u = mmse_coeffs(full, var::U, {var::Bp});
  const Eigen::VectorXd w_uj = mmse_coeffs(full, var::U, {var::Ap, var::Bp});

  // Base draws: S = √P_s g0, U = (P_su/P_s) S + √(P_u - P_su²/P_s) g1, others scaled independently.
  const double sd_cond_u = std::sqrt(std::max(0.0, src.var_u - src.cov_su * src.cov_su / src.var_s));
  const std::array<double, kBase> sd{std::sqrt(src.var_s), sd_cond_u,          std::sqrt(p.var_ap),
                                     std::sqrt(p.var_bp),  std::sqrt(p.pow_qc), std::sqrt(p.pow_qp),
                                     std::sqrt(p.pow_wc),  std::sqrt(p.pow_x),  std::sqrt(ch.noise_main),
                                     std::sqrt(ch.noise_eve)};
  const double reg = src.cov_su / src.var_s;
  Eigen::Matrix<double, kReported, kBase> Lr = L.topRows(kReported);

  const std::uint64_t n = cfg.n_samples;
  const std::uint64_t n_chunks = (n + cfg.chunk - 1) / cfg.chunk;
  std::vector<Partial> parts(n_chunks);
  const Philox4x32 gen(cfg.seed);

  auto run_chunk = [&](std::uint64_t c) {
    Partial& part = parts[c];
    const std::uint64_t begin = c * cfg.chunk;
    const std::uint64_t end = std::min(n, begin + cfg.chunk);
    std::array<double, kBase> b{};
    std::array<double, kReported> x{};
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto local = static_cast<std::uint32_t>(i - begin);
      for (std::uint32_t k = 0; k < kBase / 2; ++k) {
        const auto [g0, g1] = normal_pair(
            gen({local, k, static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)}));
        b[2 * k] = g0 * sd[2 * k];
        b[2 * k + 1] = g1 * sd[2 * k + 1];
      }
      b[1] += reg * b[0];
      for (std::size_t r = 0; r < kReported; ++r) {
        double v = 0.0;
        for (std::size_t k = 0; k < kBase; ++k) v += Lr(r, k) * b[k];
        x[r] = v;
      }
      const double es = x[var::S] - w_s(0) * x[var::Ap];
      const double eu = x[var::U] - w_u(0) * x[var::Bp];
      const double euj = x[var::U] - w_uj(0) * x[var::Ap] - w_uj(1) * x[var::Bp];
      part.err_s += es * es;
      part.err_u += eu * eu;
      part.err_uj += euj * euj;
      for (std::size_t r = 0; r < kReported; ++r) {
        part.sum[r] += x[r];
        for (std::size_t q = r; q < kReported; ++q) part.outer[r * kReported + q] += x[r] * x[q];
      }
    }
    part.finite = std::isfinite(part.err_s) && std::isfinite(part.err_u) && std::isfinite(part.err_uj);
    for (double v : part.outer) part.finite = part.finite && std::isfinite(v);
  };

  if (cfg.exec == Execution::parallel) {
    const auto chunks = static_cast<long long>(n_chunks);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < chunks; ++c) run_chunk(static_cast<std::uint64_t>(c));
  } else {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  }

  // Fixed chunk-order reduction keeps the result independent of scheduling.
  Partial total;
  for (const auto& part : parts) {
    if (!part.finite) throw NumericError("nonfinite Monte Carlo sample (overflow)");
    total.err_s += part.err_s;
    total.err_u += part.err_u;
    total.err_uj += part.err_uj;
    for (std::size_t k = 0; k < kReported; ++k) total.sum[k] += part.sum[k];
    for (std::size_t k = 0; k < total.outer.size(); ++k) total.outer[k] += part.outer[k];
  }

  McReport rep;
  rep.config = cfg;
  const double nd = static_cast<double>(n);
  rep.D_s = total.err_s / nd;
  rep.D_u = total.err_u / nd;
  rep.D_u_joint = total.err_uj / nd;
  const Distortions closed = mmse_distortions(p, src);
  rep.D_s_closed = closed.s;
  rep.D_u_closed = closed.u;
  rep.D_u_joint_closed = mmse_error(full, var::U, {var::Ap, var::Bp});
  rep.cov = Eigen::MatrixXd(kReported, kReported);
  rep.cov_analytic = full.topLeftCorner(kReported, kReported);
  for (std::size_t r = 0; r < kReported; ++r) {
    rep.mean[r] = total.sum[r] / nd;
    for (std::size_t q = r; q < kReported; ++q)
      rep.cov(r, q) = rep.cov(q, r) = total.outer[r * kReported + q] / nd;
  }
  for (std::size_t r = 0; r < kReported; ++r)
    for (std::size_t q = 0; q < kReported; ++q) {
      const double a = rep.cov_analytic(r, q);
      const double scale = std::sqrt(rep.cov_analytic(r, r) * rep.cov_analytic(q, q));
      const double dev = std::abs(rep.cov(r, q) - a);
      const double se = std::sqrt((scale * scale + a * a) / nd);
      if (scale > 0.0) rep.max_rel_dev = std::max(rep.max_rel_dev, dev / scale);
      if (se > 0.0) rep.max_z = std::max(rep.max_z, dev / se);
    }
  if (n < kMinStatSamples)
    rep.warnings.push_back(fmt::format("n_samples = {} < {}: statistical checks skipped", n,
                                       kMinStatSamples));
  return rep;
}

ClosedForms closed_forms(const GaussianSource& src, const GaussianWiretapChannel& ch,
                         const InnerParams& p) {
  ClosedForms cf;
  const Distortions d = mmse_distortions(p, src);
  cf.D_s = d.s;
  cf.D_u = d.u;
  cf.D_u_joint = mmse_error(analytic_cov(src, ch, p), var::U, {var::Ap, var::Bp});
  const double n1 = ch.noise_main;
  const double k = det_cov(src);
  const InnerTerms t = inner_terms(p, src, ch);
  cf.terms = {
      {"I(S;A_p)", 0.5 * std::log1p(p.alpha1 * p.alpha1 * src.var_s / p.var_ap)},
      {"I(U;B_p|S,A_p)", 0.5 * std::log1p(p.alpha2 * p.alpha2 * k / (src.var_s * p.var_bp))},
      {"I(Y;Q_c,Q_p)", 0.5 * std::log1p((p.pow_qc + p.pow_qp) / (p.pow_wc + p.pow_x + n1))},
      {"I(W_c;Y|Q_c)+I(X;Y|Q_c,Q_p,W_c)",
       0.5 * (std::log1p(p.pow_wc / (p.pow_x + p.pow_qp + n1)) + std::log1p(p.pow_x / n1))},
      {"source_s", t.source_s},
      {"source_u", t.source_u},
      {"source_su", t.source_su},
      {"channel_u", t.channel_u},
  };
  cf.diagnostics = {{"channel_s", t.channel_s}};
  return cf;
}

ClosedForms logdet_forms(const GaussianSource& src, const GaussianWiretapChannel& ch,
                         const InnerParams& p) {
  using namespace var;
  const Eigen::MatrixXd c = analytic_cov(src, ch, p);
  ClosedForms cf;
  cf.D_s = mmse_error(c, S, {Ap});
  cf.D_u = mmse_error(c, U, {Bp});
  cf.D_u_joint = mmse_error(c, U, {Ap, Bp});
  const double i_sa = gaussian_mi(c, {S}, {Ap});
  const double i_ub = gaussian_mi(c, {U}, {Bp}, {S, Ap});
  const double i_qp_y = gaussian_mi(c, {Qp}, {Y}, {Qc});
  const double i_x_y = gaussian_mi(c, {X}, {Y}, {Qc, Qp, Wc});
  const double h_z_x = gaussian_cond_entropy(c, {Z}, {X});
  const double chan_u = h_z_x - gaussian_cond_entropy(c, {Z}, {Qc, Wc}) + i_qp_y + i_x_y;
  cf.terms = {
      {"I(S;A_p)", i_sa},
      {"I(U;B_p|S,A_p)", i_ub},
      {"I(Y;Q_c,Q_p)", gaussian_mi(c, {Y}, {Qc, Qp})},
      {"I(W_c;Y|Q_c)+I(X;Y|Q_c,Q_p,W_c)", gaussian_mi(c, {Wc}, {Y}, {Qc}) + i_x_y},
      {"source_s", gaussian_cond_entropy(c, {S}, {Ap})},
      {"source_u", gaussian_cond_entropy(c, {U}) - i_sa - i_ub},
      {"source_su", gaussian_cond_entropy(c, {S, U}) - i_sa - i_ub},
      {"channel_u", chan_u},
  };
  cf.diagnostics = {{"channel_s", h_z_x - gaussian_cond_entropy(c, {Z}, {Qc}) + i_qp_y}};
  return cf;
}

ValidationReport check_against(const McReport& mc, const ClosedForms& expected,
                               const ClosedForms& logdet) {
  ValidationReport rep;
  rep.mc = mc;
  rep.warnings = mc.warnings;
  auto add = [&](std::vector<TermCheck>& into, std::string name, double exp, double obs, double tol) {
    TermCheck c{std::move(name), exp, obs, tol, std::abs(obs - exp) <= tol};
    if (&into == &rep.checks) rep.pass = rep.pass && c.pass;
    into.push_back(std::move(c));
  };

  for (std::size_t i = 0; i < expected.terms.size(); ++i) {
    const auto& e = expected.terms[i];
    const auto it = std::find_if(logdet.terms.begin(), logdet.terms.end(),
                                 [&](const NamedValue& v) { return v.name == e.name; });
    if (it == logdet.terms.end()) throw ConfigError("no log-det counterpart for term " + e.name);
    add(rep.checks, e.name, e.value, it->value, kTermTolerance);
  }
  for (const auto& e : expected.diagnostics) {
    const auto it = std::find_if(logdet.diagnostics.begin(), logdet.diagnostics.end(),
                                 [&](const NamedValue& v) { return v.name == e.name; });
    if (it != logdet.diagnostics.end()) add(rep.diagnostics, e.name, e.value, it->value, kTermTolerance);
  }

  const double nd = static_cast<double>(mc.config.n_samples);
  if (mc.config.n_samples < kMinStatSamples) return rep;
  add(rep.checks, "D_s", expected.D_s, mc.D_s, kSigmas * expected.D_s * std::sqrt(2.0 / nd) + 1e-15);
  add(rep.checks, "D_u", expected.D_u, mc.D_u, kSigmas * expected.D_u * std::sqrt(2.0 / nd) + 1e-15);
  add(rep.checks, "D_u_joint", expected.D_u_joint, mc.D_u_joint,
      kSigmas * expected.D_u_joint * std::sqrt(2.0 / nd) + 1e-15);
  for (std::size_t r = 0; r < kReported; ++r)
    for (std::size_t q = r; q < kReported; ++q) {
      const double a = mc.cov_analytic(r, q);
      const double se =
          std::sqrt((mc.cov_analytic(r, r) * mc.cov_analytic(q, q) + a * a) / nd);
      add(rep.checks, "cov(" + kLabels[r] + "," + kLabels[q] + ")", a, mc.cov(r, q),
          kSigmas * se + 1e-12);
    }
  return rep;
}

ValidationReport validate_inner_point(const GaussianSource& src, const GaussianWiretapChannel& ch,
                                      const InnerParams& p, double R, const McConfig& cfg) {
  if (!(R >= 0.0)) throw DomainError("R must be nonnegative");
  const McReport mc = sample_system(src, ch, p, cfg);
  ValidationReport rep = check_against(mc, closed_forms(src, ch, p), logdet_forms(src, ch, p));
  const auto rates = rate_feasible(p, src, ch, R);
  for (const auto& s : rates.slacks)
    rep.diagnostics.push_back({"rate_slack:" + s.name, 0.0, s.value, rates.tolerance,
                               s.value >= -rates.tolerance});
  return rep;
}

std::string ValidationReport::diff() const {
  std::ostringstream os;
  for (const auto& c : checks)
    if (!c.pass)
      os << fmt::format("{}: expected {:.12g}, observed {:.12g}, |diff| {:.3g} > tol {:.3g}\n", c.name,
                        c.expected, c.observed, std::abs(c.observed - c.expected), c.tolerance);
  return os.str();
}

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

bool is_information(const std::string& name) {
  return name.rfind("I(", 0) == 0 || name.rfind("source_", 0) == 0 ||
         name.rfind("channel_", 0) == 0 || name.rfind("rate_slack:", 0) == 0;
}

}  // namespace

nlohmann::json to_json(const McReport& r) {
  nlohmann::json j;
  j["n_samples"] = r.config.n_samples;
  j["seed"] = r.config.seed;
  j["chunk"] = r.config.chunk;
  j["D_s"] = r.D_s;
  j["D_u"] = r.D_u;
  j["D_u_joint"] = r.D_u_joint;
  j["D_s_closed"] = r.D_s_closed;
  j["D_u_closed"] = r.D_u_closed;
  j["D_u_joint_closed"] = r.D_u_joint_closed;
  j["labels"] = kLabels;
  j["mean"] = r.mean;
  j["covariance"] = matrix_json(r.cov);
  j["covariance_analytic"] = matrix_json(r.cov_analytic);
  j["max_rel_dev"] = r.max_rel_dev;
  j["max_z"] = r.max_z;
  return j;
}

nlohmann::json to_json(const ValidationReport& r, LogBase base) {
  auto checks = [&](const std::vector<TermCheck>& v) {
    auto arr = nlohmann::json::array();
    for (const auto& c : v) {
      const double f = is_information(c.name) ? to_base(1.0, base) : 1.0;
      arr.push_back({{"name", c.name},
                     {"expected", c.expected * f},
                     {"observed", c.observed * f},
                     {"tolerance", c.tolerance * f},
                     {"pass", c.pass}});
    }
    return arr;
  };
  nlohmann::json j;
  j["pass"] = r.pass;
  j["mc"] = to_json(r.mc);
  j["checks"] = checks(r.checks);
  j["term_diagnostics"] = checks(r.diagnostics);
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace semsec::mc

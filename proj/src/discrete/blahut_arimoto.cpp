#include "semsec/discrete/blahut_arimoto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "semsec/errors.hpp"

namespace semsec::discrete {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNewtonMaxLetters = 1024;

struct Problem {
  std::span<const double> p_x;
  const std::vector<DistortionMatrix>& d;
  std::size_t nx;
  std::size_t ny;
};

struct Solve {
  Matrix c;              // p(y|x)
  std::vector<double> q; // output marginal used for the last c-update
  double rate = 0.0;
  std::vector<double> dist;
  long iterations = 0;
  bool converged = false;
  bool monotone = true;
};

double weight(const Problem& pb, const std::vector<double>& beta, std::size_t x, std::size_t y) {
  double w = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k)
    if (beta[k] != 0.0) w += beta[k] * pb.d[k](x, y);
  return w;
}

// Kernel a(x, y) = e^{-(w(x,y) - min_y w(x,y))}; the largest entry of each row
// is 1, so Z_x cannot underflow while q has mass on that letter.
struct Kernel {
  Matrix a;
  std::vector<double> shift;
};

Kernel make_kernel(const Problem& pb, const std::vector<double>& beta) {
  Kernel k{Matrix(pb.nx, pb.ny), std::vector<double>(pb.nx, 0.0)};
  for (std::size_t x = 0; x < pb.nx; ++x) {
    double m = kInf;
    for (std::size_t y = 0; y < pb.ny; ++y) m = std::min(m, weight(pb, beta, x, y));
    k.shift[x] = m;
    for (std::size_t y = 0; y < pb.ny; ++y) k.a(x, y) = std::exp(-(weight(pb, beta, x, y) - m));
  }
  return k;
}

// G(q) = -Σ_x p(x) ln Z_x with Z_x = Σ_y q(y) e^{-β·d(x,y)}, together with Z
// (shifted) and c_y = Σ_x p(x) a(x,y) / Z_x, the negative gradient of G.
struct Eval {
  double g = 0.0;
  std::vector<double> z;
  std::vector<double> c;
};

Eval evaluate(const Problem& pb, const Kernel& k, const std::vector<double>& q) {
  Eval e;
  e.z.assign(pb.nx, 0.0);
  e.c.assign(pb.ny, 0.0);
  for (std::size_t x = 0; x < pb.nx; ++x) {
    if (pb.p_x[x] <= 0.0) continue;
    const auto row = k.a.row(x);
    double acc = 0.0;
    for (std::size_t y = 0; y < pb.ny; ++y) acc += q[y] * row[y];
    e.z[x] = acc;
    e.g -= pb.p_x[x] * (std::log(acc) - k.shift[x]);
    const double f = pb.p_x[x] / acc;
    for (std::size_t y = 0; y < pb.ny; ++y) e.c[y] += f * row[y];
  }
  return e;
}

// Active-set solver (Lawson-Hanson form) for min ½ v'Hv - g'v subject to v >= 0,
// H positive semidefinite. Singular subproblems take the minimum-norm solution.
Eigen::VectorXd nonneg_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g) {
  const Eigen::Index n = H.cols();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  const double tol = 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff());
  for (Eigen::Index outer = 0; outer < 3 * n; ++outer) {
    const Eigen::VectorXd w = g - H * v;
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!in[static_cast<std::size_t>(j)] && w(j) > tol && (best < 0 || w(j) > w(best))) best = j;
    if (best < 0) break;
    in[static_cast<std::size_t>(best)] = true;
    for (Eigen::Index inner = 0; inner < 3 * n; ++inner) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index j = 0; j < n; ++j)
        if (in[static_cast<std::size_t>(j)]) idx.push_back(j);
      const auto m = static_cast<Eigen::Index>(idx.size());
      Eigen::MatrixXd sub(m, m);
      Eigen::VectorXd rhs(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        rhs(i) = g(idx[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < m; ++j)
          sub(i, j) = H(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      }
      const Eigen::VectorXd z = sub.completeOrthogonalDecomposition().solve(rhs);
      double alpha = 1.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        const auto j = idx[static_cast<std::size_t>(i)];
        if (z(i) <= 0.0) alpha = std::min(alpha, v(j) / (v(j) - z(i)));
      }
      for (Eigen::Index i = 0; i < m; ++i) {
        const auto j = idx[static_cast<std::size_t>(i)];
        v(j) += alpha * (z(i) - v(j));
      }
      if (alpha >= 1.0) break;
      for (auto j : idx)
        if (v(j) <= 1e-300) {
          v(j) = 0.0;
          in[static_cast<std::size_t>(j)] = false;
        }
    }
  }
  return v;
}

// Constrained Newton step for min G over the simplex. Over v >= 0 the
// minimizer of Φ(v) = -Σ_x p(x) ln Z_x(v) + Σ_y v_y lies on the simplex and
// coincides with that of G. The quadratic model of Φ around q is a
// nonnegative QP; its normalized solution is the target of a backtracking line
// search on G.
bool newton_step(const Problem& pb, const Kernel& k, std::vector<double>& q, Eval& cur) {
  const auto nx = static_cast<Eigen::Index>(pb.nx), ny = static_cast<Eigen::Index>(pb.ny);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nx, ny);
  for (Eigen::Index x = 0; x < nx; ++x) {
    const double p = pb.p_x[static_cast<std::size_t>(x)];
    if (p <= 0.0) continue;
    const double r = std::sqrt(p);
    for (Eigen::Index y = 0; y < ny; ++y)
      A(x, y) = r * k.a(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) /
                cur.z[static_cast<std::size_t>(x)];
  }
  Eigen::VectorXd g(ny);
  for (Eigen::Index y = 0; y < ny; ++y) g(y) = 2.0 * cur.c[static_cast<std::size_t>(y)] - 1.0;
  const Eigen::VectorXd v = nonneg_qp(A.transpose() * A, g);
  const double total = v.sum();
  if (!(total > 0.0) || !v.allFinite()) return false;
  std::vector<double> dir(pb.ny);
  double slope = 0.0;
  for (std::size_t y = 0; y < pb.ny; ++y) {
    dir[y] = v(static_cast<Eigen::Index>(y)) / total - q[y];
    slope -= cur.c[y] * dir[y];
  }
  if (!(slope < 0.0)) return false;
  for (double t = 1.0; t > 1e-6; t *= 0.5) {
    std::vector<double> trial(pb.ny);
    for (std::size_t y = 0; y < pb.ny; ++y) trial[y] = std::max(0.0, q[y] + t * dir[y]);
    Eval e = evaluate(pb, k, trial);
    if (e.g <= cur.g + 1e-4 * t * slope) {
      q = std::move(trial);
      cur = std::move(e);
      return true;
    }
  }
  return false;
}

// Prunes and renormalizes the conditional, then evaluates rate and
// distortions against the induced output marginal.
void finish(const Problem& pb, Solve& s, double prune) {
  for (std::size_t x = 0; x < pb.nx; ++x) {
    double row = 0.0;
    for (std::size_t y = 0; y < pb.ny; ++y) {
      if (s.c(x, y) < prune) s.c(x, y) = 0.0;
      row += s.c(x, y);
    }
    for (std::size_t y = 0; y < pb.ny; ++y) s.c(x, y) /= row;
  }
  std::vector<double> marg(pb.ny, 0.0);
  for (std::size_t x = 0; x < pb.nx; ++x)
    for (std::size_t y = 0; y < pb.ny; ++y) marg[y] += pb.p_x[x] * s.c(x, y);
  s.rate = 0.0;
  s.dist.assign(pb.d.size(), 0.0);
  for (std::size_t x = 0; x < pb.nx; ++x) {
    if (pb.p_x[x] <= 0.0) continue;
    for (std::size_t y = 0; y < pb.ny; ++y) {
      const double c = s.c(x, y);
      if (c <= 0.0) continue;
      s.rate += pb.p_x[x] * c * std::log(c / marg[y]);
      for (std::size_t k = 0; k < pb.d.size(); ++k) s.dist[k] += pb.p_x[x] * c * pb.d[k](x, y);
    }
  }
  s.rate = std::max(0.0, s.rate);
  s.q = std::move(marg);
}

// Blahut-Arimoto iterations at fixed multipliers, each followed by a
// constrained Newton step. G is nonincreasing along the accepted iterates and
// G(q) - ln max_y c_y lower-bounds its minimum.
Solve solve_fixed(const Problem& pb, const std::vector<double>& beta, std::vector<double> q,
                  const BAOptions& opts) {
  Solve s;
  s.c = Matrix(pb.nx, pb.ny, 0.0);
  const Kernel k = make_kernel(pb, beta);
  Eval cur = evaluate(pb, k, q);
  double prev_g = cur.g;

  for (long it = 0; it < opts.max_inner; ++it) {
    ++s.iterations;
    const double gap = std::log(*std::max_element(cur.c.begin(), cur.c.end()));
    if (gap < opts.gap_tol) {
      s.converged = true;
      break;
    }
    double total = 0.0;
    for (std::size_t y = 0; y < pb.ny; ++y) total += (q[y] *= cur.c[y]);
    for (auto& v : q) v /= total;
    cur = evaluate(pb, k, q);
    if (it >= 2 && pb.ny <= kNewtonMaxLetters) newton_step(pb, k, q, cur);
    if (cur.g > prev_g + 1e-12 * (1.0 + std::abs(prev_g))) s.monotone = false;
    // Objective no longer moving at rounding level: the gap floor has been
    // reached, so accept once the certificate is already tight.
    const bool stalled = std::abs(prev_g - cur.g) <= 1e-15 * (1.0 + std::abs(cur.g));
    prev_g = cur.g;
    if (stalled && gap < 1e-7) {
      s.converged = true;
      break;
    }
  }
  for (std::size_t x = 0; x < pb.nx; ++x)
    for (std::size_t y = 0; y < pb.ny; ++y)
      s.c(x, y) = pb.p_x[x] > 0.0 ? q[y] * k.a(x, y) / cur.z[x] : (y == 0 ? 1.0 : 0.0);
  finish(pb, s, opts.prune);
  return s;
}

// Convex combination λ a + (1 - λ) b of two conditionals. When a and b solve
// the Lagrangian at (numerically) the same multipliers, so does the mixture,
// since the Lagrangian is convex in the conditional.
Solve mix(const Problem& pb, const Solve& a, const Solve& b, double lambda, double prune) {
  Solve s;
  s.c = Matrix(pb.nx, pb.ny, 0.0);
  for (std::size_t x = 0; x < pb.nx; ++x)
    for (std::size_t y = 0; y < pb.ny; ++y) s.c(x, y) = lambda * a.c(x, y) + (1.0 - lambda) * b.c(x, y);
  s.converged = a.converged && b.converged;
  s.monotone = a.monotone && b.monotone;
  finish(pb, s, prune);
  return s;
}

// Mixes `over` (meets target k with room to spare) with `under` (misses it) so
// that constraint k holds with equality.
Solve hit_target(const Problem& pb, const Solve& under, const Solve& over, std::size_t k, double target,
                 double prune) {
  const double gap = under.dist[k] - over.dist[k];
  if (!(over.dist[k] < target) || !(gap > 0.0)) return over;
  const double lambda = std::clamp((target - over.dist[k]) / gap, 0.0, 1.0);
  Solve s = mix(pb, under, over, lambda, prune);
  return s.dist[k] <= target + 1e-12 * std::max(1.0, std::abs(target)) ? s : over;
}

std::vector<double> warm(const std::vector<double>& q) {
  std::vector<double> out(q.size());
  const double u = 1.0 / static_cast<double>(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = 0.999 * q[i] + 0.001 * u;
  return out;
}

}  // namespace

double min_distortion(std::span<const double> p_x, const DistortionMatrix& d) {
  double acc = 0.0;
  for (std::size_t x = 0; x < p_x.size(); ++x) {
    if (p_x[x] <= 0.0) continue;
    const auto row = d.row(x);
    acc += p_x[x] * *std::min_element(row.begin(), row.end());
  }
  return acc;
}

BAResult ba_rdf(std::span<const double> p_x, const std::vector<DistortionMatrix>& d,
                const std::vector<double>& targets, const BAOptions& opts) {
  if (d.empty() || d.size() > 2 || d.size() != targets.size())
    throw ConfigError("ba_rdf supports one or two distortion constraints");
  const std::size_t nx = p_x.size();
  const std::size_t ny = d.front().cols();
  for (const auto& dk : d)
    if (dk.rows() != nx || dk.cols() != ny) throw ConfigError("distortion matrix shape mismatch");
  double mass = 0.0;
  for (double p : p_x) {
    if (!(p >= 0.0)) throw ConfigError("source distribution has a negative entry");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-12) throw ConfigError("source distribution does not sum to 1");

  for (std::size_t k = 0; k < d.size(); ++k) {
    const double dmin = min_distortion(p_x, d[k]);
    if (targets[k] < dmin - 1e-12)
      throw InfeasibleError("infeasible distortion: target " + std::to_string(targets[k]) +
                            " below minimum achievable " + std::to_string(dmin));
  }

  const std::size_t K = d.size();
  BAResult out;

  // Zero rate when a single reconstruction letter meets every target.
  for (std::size_t y = 0; y < ny; ++y) {
    std::vector<double> dist(K, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t k = 0; k < K; ++k) dist[k] += p_x[x] * d[k](x, y);
    bool ok = true;
    for (std::size_t k = 0; k < K; ++k) ok = ok && dist[k] <= targets[k] + 1e-12 * std::max(1.0, std::abs(targets[k]));
    if (ok) {
      out.rate = 0.0;
      out.distortions = dist;
      out.multipliers.assign(K, 0.0);
      out.converged = true;
      out.output_marginal.assign(ny, 0.0);
      out.output_marginal[y] = 1.0;
      out.conditional = Matrix(nx, ny, 0.0);
      for (std::size_t x = 0; x < nx; ++x) out.conditional(x, y) = 1.0;
      return out;
    }
  }

  const Problem pb{p_x, d, nx, ny};
  std::vector<double> beta(K, 0.0);
  std::vector<double> q(ny, 1.0 / static_cast<double>(ny));
  bool all_converged = true;
  bool monotone = true;
  long iterations = 0;

  auto run = [&](const std::vector<double>& b) {
    Solve s = solve_fixed(pb, b, warm(q), opts);
    iterations += s.iterations;
    all_converged = all_converged && s.converged;
    monotone = monotone && s.monotone;
    return s;
  };

  // Smallest multiplier on constraint k (others fixed) that meets target k: zero
  // when the constraint is slack there, else geometric bracketing then bisection
  // on the monotone map β_k -> E d_k.
  auto search = [&](std::size_t k, std::vector<double> b, double start) {
    b[k] = 0.0;
    Solve s0 = run(b);
    q = s0.q;
    if (s0.dist[k] <= targets[k] + opts.active_tol) return std::pair{0.0, std::move(s0)};
    double lo = 0.0, hi = std::max(1.0, start);
    Solve best, under = std::move(s0);
    for (;;) {
      b[k] = hi;
      best = run(b);
      q = best.q;
      if (best.dist[k] <= targets[k] || hi >= opts.beta_cap) break;
      lo = hi;
      hi *= 2.0;
      under = std::move(best);
    }
    for (int i = 0; i < opts.max_bisection && hi - lo > opts.bracket_width * std::max(1.0, hi); ++i) {
      b[k] = 0.5 * (lo + hi);
      Solve s = run(b);
      q = s.q;
      if (s.dist[k] <= targets[k]) {
        hi = b[k];
        best = std::move(s);
      } else {
        lo = b[k];
        under = std::move(s);
      }
    }
    // E d_k jumps across β_k at a kink of the dual; time-share the two sides.
    if (best.dist[k] <= targets[k]) best = hit_target(pb, under, best, k, targets[k], opts.prune);
    return std::pair{hi, std::move(best)};
  };

  // The returned solve is the one that met the targets; re-solving at the final
  // multipliers from another start can land elsewhere when the optimum is flat.
  bool search_converged = true;
  Solve fin;
  if (K == 1) {
    auto [b, s] = search(0, beta, 1.0);
    beta[0] = b;
    fin = std::move(s);
  } else {
    // With β_1 maximized out the dual stays concave in β_2, and its slope
    // E d_2 - D_2 is nonincreasing along the inner optimum, so β_2 is found by
    // the same bracketing and bisection around an inner search over β_1.
    double b1_hint = 1.0;
    auto meets = [&](double b2, double& b1, Solve& out) {
      auto [b1_opt, s] = search(0, {0.0, b2}, b1_hint);
      b1 = b1_opt;
      if (b1 > 0.0) b1_hint = b1;
      out = std::move(s);
      return out.dist[1] <= targets[1] + (b2 == 0.0 ? opts.active_tol : 0.0);
    };
    double b1 = 0.0;
    if (meets(0.0, b1, fin)) {
      beta = {b1, 0.0};
    } else {
      Solve under = fin;
      double lo = 0.0, hi = 1.0, b1_hi = 0.0;
      while (!meets(hi, b1_hi, fin)) {
        lo = hi;
        hi *= 2.0;
        under = fin;
        if (hi > opts.beta_cap) {
          search_converged = false;
          break;
        }
      }
      for (int i = 0; i < opts.max_bisection && hi - lo > opts.bracket_width * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        double b1_mid = 0.0;
        Solve s;
        if (meets(mid, b1_mid, s)) {
          hi = mid;
          b1_hi = b1_mid;
          fin = std::move(s);
        } else {
          lo = mid;
          under = std::move(s);
        }
      }
      beta = {b1_hi, hi};
      if (fin.dist[1] <= targets[1]) fin = hit_target(pb, under, fin, 1, targets[1], opts.prune);
    }
  }

  out.rate = fin.rate;
  out.distortions = fin.dist;
  out.multipliers = beta;
  out.iterations = iterations;
  out.monotone = monotone;
  bool within = true;
  for (std::size_t k = 0; k < K; ++k) within = within && fin.dist[k] <= targets[k] + 1e-6;
  out.converged = all_converged && search_converged && within;
  out.output_marginal = fin.q;
  out.conditional = std::move(fin.c);
  return out;
}

BAResult ba_rdf_classic(std::span<const double> p_u, const DistortionMatrix& d_u, double D_u,
                        const BAOptions& opts) {
  return ba_rdf(p_u, {d_u}, {D_u}, opts);
}

namespace {

void require_pair(const JointPMF& p_su, const DistortionMatrix& d_s) {
  if (p_su.rank() != 2) throw ConfigError("semantic source PMF must have axes (S, U)");
  if (d_s.rows() != p_su.dims()[0]) throw ConfigError("d_s rows must match the S alphabet");
}

}  // namespace

BAResult ba_rdf_bivariate(const JointPMF& p_su, const DistortionMatrix& d_s,
                          const DistortionMatrix& d_u, double D_s, double D_u,
                          const BAOptions& opts) {
  require_pair(p_su, d_s);
  const std::size_t ns = p_su.dims()[0], nu = p_su.dims()[1];
  if (d_u.rows() != nu) throw ConfigError("d_u rows must match the U alphabet");
  const std::size_t nsh = d_s.cols(), nuh = d_u.cols();
  Matrix m1(ns * nu, nsh * nuh), m2(ns * nu, nsh * nuh);
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t u = 0; u < nu; ++u)
      for (std::size_t a = 0; a < nsh; ++a)
        for (std::size_t b = 0; b < nuh; ++b) {
          m1(s * nu + u, a * nuh + b) = d_s(s, a);
          m2(s * nu + u, a * nuh + b) = d_u(u, b);
        }
  return ba_rdf(p_su.probs(), {DistortionMatrix(std::move(m1)), DistortionMatrix(std::move(m2))},
                {D_s, D_u}, opts);
}

ModifiedDistortion modified_distortion(const JointPMF& p_su, const DistortionMatrix& d_s) {
  require_pair(p_su, d_s);
  const std::size_t ns = p_su.dims()[0], nu = p_su.dims()[1];
  const auto p_u = p_su.marginal({1}).probs();
  ModifiedDistortion out{DistortionMatrix(Matrix(nu, d_s.cols(), 0.0)), {}};
  Matrix m(nu, d_s.cols(), 0.0);
  for (std::size_t u = 0; u < nu; ++u) {
    if (!(p_u[u] > 0.0)) {
      out.excluded.push_back(u);
      continue;
    }
    for (std::size_t s = 0; s < ns; ++s) {
      const double w = p_su.probs()[s * nu + u] / p_u[u];
      for (std::size_t a = 0; a < d_s.cols(); ++a) m(u, a) += w * d_s(s, a);
    }
  }
  out.d = DistortionMatrix(std::move(m));
  return out;
}

BAResult ba_rdf_semantic(const JointPMF& p_su, const DistortionMatrix& d_s,
                         const DistortionMatrix& d_u, double D_s, double D_u,
                         const BAOptions& opts) {
  require_pair(p_su, d_s);
  const std::size_t nu = p_su.dims()[1];
  if (d_u.rows() != nu) throw ConfigError("d_u rows must match the U alphabet");
  const auto dh = modified_distortion(p_su, d_s).d;
  const std::size_t nsh = dh.cols(), nuh = d_u.cols();
  Matrix m1(nu, nsh * nuh), m2(nu, nsh * nuh);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t a = 0; a < nsh; ++a)
      for (std::size_t b = 0; b < nuh; ++b) {
        m1(u, a * nuh + b) = dh(u, a);
        m2(u, a * nuh + b) = d_u(u, b);
      }
  const auto p_u = p_su.marginal({1}).probs();
  return ba_rdf(p_u, {DistortionMatrix(std::move(m1)), DistortionMatrix(std::move(m2))}, {D_s, D_u},
                opts);
}

BAResult ba_rdf_indirect(const JointPMF& p_su, const DistortionMatrix& d_s, double D_s,
                         const BAOptions& opts) {
  const auto dh = modified_distortion(p_su, d_s).d;
  const auto p_u = p_su.marginal({1}).probs();
  return ba_rdf(p_u, {dh}, {D_s}, opts);
}

}  // namespace semsec::discrete

#pragma once

// Rate-distortion oracles on tiny alphabets, independent of the
// Blahut-Arimoto code. Rates in nats.
//
// For an output marginal r the two-constraint RDF restricted to conditionals
// with that marginal relaxes to
//   V(r) = max_{β>=0} [-Σ_x p(x) ln Σ_y r(y) e^{-β1 d1(x,y) - β2 d2(x,y)} - β·D],
// which is concave in β and convex in r, and min_r V(r) is the RDF. The max is
// taken by nested golden sections on β = e^t - 1 (monotone in t, so the
// partial maxima stay unimodal); the min over r by a grid and a mass-transfer
// pattern search.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

inline double golden_max(const std::function<double(double)>& f, double a, double b, int iters) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a), f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1, x1 = x2, f1 = f2, x2 = a + g * (b - a), f2 = f(x2);
    } else {
      b = x2, x2 = x1, f2 = f1, x1 = b - g * (b - a), f1 = f(x1);
    }
  }
  return std::max({f1, f2, f(a), f(b)});
}

struct TwoDistortion {
  std::vector<double> p;               // source letters
  std::vector<std::vector<double>> d1; // [x][y]
  std::vector<std::vector<double>> d2;
  double D1, D2;
  std::size_t ny() const { return d1.front().size(); }
};

inline double fixed_marginal_value(const TwoDistortion& P, const std::vector<double>& r) {
  constexpr double kTMax = 18.0;  // β up to e^18 ≈ 6.6e7
  auto f = [&](double b1, double b2) {
    double acc = -b1 * P.D1 - b2 * P.D2;
    for (std::size_t x = 0; x < P.p.size(); ++x) {
      if (P.p[x] <= 0.0) continue;
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t y = 0; y < r.size(); ++y)
        if (r[y] > 0.0) m = std::min(m, b1 * P.d1[x][y] + b2 * P.d2[x][y]);
      double z = 0.0;
      for (std::size_t y = 0; y < r.size(); ++y)
        if (r[y] > 0.0) z += r[y] * std::exp(-(b1 * P.d1[x][y] + b2 * P.d2[x][y] - m));
      acc -= P.p[x] * (std::log(z) - m);
    }
    return acc;
  };
  auto beta = [](double t) { return std::expm1(t); };
  return golden_max(
      [&](double t1) { return golden_max([&](double t2) { return f(beta(t1), beta(t2)); }, 0.0, kTMax, 90); }, 0.0,
      kTMax, 90);
}

/// min_r V(r) over the output simplex.
inline double two_constraint_rdf(const TwoDistortion& P) {
  const std::size_t ny = P.ny();
  constexpr int kGrid = 8;
  std::vector<double> best_r, r(ny);
  double best = std::numeric_limits<double>::infinity();
  // Compositions of kGrid into ny parts.
  std::function<void(std::size_t, int)> walk = [&](std::size_t i, int left) {
    if (i + 1 == ny) {
      r[i] = left / double(kGrid);
      const double v = fixed_marginal_value(P, r);
      if (v < best) best = v, best_r = r;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      r[i] = k / double(kGrid);
      walk(i + 1, left - k);
    }
  };
  walk(0, kGrid);

  r = best_r;
  for (double step = 0.5 / kGrid; step > 1e-7;) {
    bool moved = false;
    for (std::size_t i = 0; i < ny; ++i)
      for (std::size_t j = 0; j < ny; ++j) {
        if (i == j || r[i] <= 0.0) continue;
        auto t = r;
        const double m = std::min(step, t[i]);
        t[i] -= m;
        t[j] += m;
        const double v = fixed_marginal_value(P, t);
        if (v < best - 1e-15) best = v, r = t, moved = true;
      }
    if (!moved) step *= 0.5;
  }
  return best;
}

/// Semantic RDF: binary U, reconstruction y = ŝ·2 + û, distortions dh[u][ŝ]
/// and du[u][û].
inline double semantic_rdf(const std::array<double, 2>& p_u, const std::array<std::array<double, 2>, 2>& dh,
                           const std::array<std::array<double, 2>, 2>& du, double D_s, double D_u) {
  TwoDistortion P{{p_u[0], p_u[1]}, {}, {}, D_s, D_u};
  for (int u = 0; u < 2; ++u) {
    P.d1.push_back({});
    P.d2.push_back({});
    for (int y = 0; y < 4; ++y) {
      P.d1.back().push_back(dh[u][y / 2]);
      P.d2.back().push_back(du[u][y % 2]);
    }
  }
  return two_constraint_rdf(P);
}

/// Bivariate RDF: source x = s·2 + u, reconstruction y = ŝ·2 + û.
inline double bivariate_rdf(const std::array<double, 4>& p_x, const std::array<std::array<double, 2>, 2>& ds,
                            const std::array<std::array<double, 2>, 2>& du, double D_s, double D_u) {
  TwoDistortion P{{p_x.begin(), p_x.end()}, {}, {}, D_s, D_u};
  for (int x = 0; x < 4; ++x) {
    P.d1.push_back({});
    P.d2.push_back({});
    for (int y = 0; y < 4; ++y) {
      P.d1.back().push_back(ds[x / 2][y / 2]);
      P.d2.back().push_back(du[x % 2][y % 2]);
    }
  }
  return two_constraint_rdf(P);
}

}  // namespace oracle

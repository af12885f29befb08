#include "semsec/discrete/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semsec/errors.hpp"
#include "semsec/nelder_mead.hpp"

namespace semsec::discrete {

namespace {

void check_input(std::span<const double> p_x, const DMC& dmc) {
  if (p_x.size() != dmc.in_size())
    throw ConfigError("input distribution has " + std::to_string(p_x.size()) +
                      " letters, channel expects " + std::to_string(dmc.in_size()));
}

// I(X;Y) = Σ_x p(x) Σ_y W(y|x) ln(W(y|x) / q(y)).
double mutual_info(std::span<const double> p_x, const DMC& w) {
  const auto q = w.output(p_x);
  double acc = 0.0;
  for (std::size_t x = 0; x < w.in_size(); ++x) {
    if (p_x[x] <= 0.0) continue;
    for (std::size_t y = 0; y < w.out_size(); ++y) {
      const double t = w(x, y);
      if (t > 0.0) acc += p_x[x] * t * std::log(t / q[y]);
    }
  }
  return std::max(0.0, acc);
}

std::vector<double> softmax(std::span<const double> logits) {
  // Last coordinate has logit 0.
  std::vector<double> p(logits.size() + 1);
  double m = 0.0;
  for (double v : logits) m = std::max(m, v);
  double z = std::exp(-m);
  for (std::size_t i = 0; i < logits.size(); ++i) z += std::exp(logits[i] - m);
  for (std::size_t i = 0; i < logits.size(); ++i) p[i] = std::exp(logits[i] - m) / z;
  p.back() = std::exp(-m) / z;
  return p;
}

}  // namespace

double channel_rate(std::span<const double> p_x, const DMC& dmc_y) {
  check_input(p_x, dmc_y);
  return mutual_info(p_x, dmc_y);
}

double secrecy_rate(std::span<const double> p_x, const DMC& dmc_y, const DMC& dmc_z_given_y) {
  check_input(p_x, dmc_y);
  if (dmc_z_given_y.in_size() != dmc_y.out_size())
    throw ConfigError("eavesdropper channel input size must equal main channel output size");
  const DMC dmc_z = dmc_y.then(dmc_z_given_y);
  return mutual_info(p_x, dmc_y) - mutual_info(p_x, dmc_z);
}

CapacityResult channel_capacity(const DMC& w, double tol, long max_iter) {
  const std::size_t nx = w.in_size();
  CapacityResult out;
  std::vector<double> r(nx, 1.0 / static_cast<double>(nx));
  std::vector<double> c(nx);
  for (long it = 0; it < max_iter; ++it) {
    const auto q = w.output(r);
    for (std::size_t x = 0; x < nx; ++x) {
      double d = 0.0;
      for (std::size_t y = 0; y < w.out_size(); ++y)
        if (w(x, y) > 0.0) d += w(x, y) * std::log(w(x, y) / q[y]);
      c[x] = std::exp(d);
    }
    double lower_sum = 0.0;
    for (std::size_t x = 0; x < nx; ++x) lower_sum += r[x] * c[x];
    const double lower = std::log(lower_sum);
    const double upper = std::log(*std::max_element(c.begin(), c.end()));
    out.iterations = it + 1;
    if (upper - lower < tol) {
      out.converged = true;
      break;
    }
    for (std::size_t x = 0; x < nx; ++x) r[x] = r[x] * c[x] / lower_sum;
  }
  out.value = mutual_info(r, w);
  out.input = std::move(r);
  return out;
}

CapacityResult secrecy_capacity(const DMC& dmc_y, const DMC& dmc_z_given_y) {
  const std::size_t nx = dmc_y.in_size();
  if (dmc_z_given_y.in_size() != dmc_y.out_size())
    throw ConfigError("eavesdropper channel input size must equal main channel output size");
  const DMC dmc_z = dmc_y.then(dmc_z_given_y);
  auto rate = [&](std::span<const double> p) { return mutual_info(p, dmc_y) - mutual_info(p, dmc_z); };

  CapacityResult out;
  if (nx == 1) {
    out.input = {1.0};
    out.value = 0.0;
    out.converged = true;
    return out;
  }
  if (nx == 2) {
    auto f = [&](double t) {
      const double p[2] = {t, 1.0 - t};
      return rate(p);
    };
    constexpr int kGrid = 1000;
    int best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kGrid; ++i) {
      const double v = f(static_cast<double>(i) / kGrid);
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    double a = std::max(0, best - 1) / static_cast<double>(kGrid);
    double b = std::min(kGrid, best + 1) / static_cast<double>(kGrid);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    long it = 0;
    while (b - a > 1e-12 && it < 200) {
      ++it;
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = f(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = f(x1);
      }
    }
    const double t = 0.5 * (a + b);
    out.value = std::max(best_v, f(t));
    out.input = out.value == best_v ? std::vector<double>{best / double(kGrid), 1.0 - best / double(kGrid)}
                                    : std::vector<double>{t, 1.0 - t};
    out.iterations = it;
    out.converged = true;
    return out;
  }

  // Multistart from the uniform input and from inputs leaning toward each letter.
  auto cost = [&](std::span<const double> z) {
    const auto p = softmax(z);
    return -rate(p);
  };
  NelderMeadOptions nm;
  nm.max_evals = 4000;
  nm.initial_step = 1.0;
  out.value = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s <= nx; ++s) {
    std::vector<double> z0(nx - 1, 0.0);
    if (s < nx - 1) z0[s] = 3.0;
    else if (s == nx - 1)
      for (auto& v : z0) v = -3.0;
    const auto res = nelder_mead(cost, z0, nm);
    out.iterations += res.evals;
    if (-res.value > out.value) {
      out.value = -res.value;
      out.input = softmax(res.x);
      out.converged = res.converged;
    }
  }
  out.value = std::max(0.0, out.value);
  return out;
}

}  // namespace semsec::discrete

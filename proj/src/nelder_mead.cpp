#include "semsec/nelder_mead.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

namespace semsec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Context {
  const std::function<double(std::span<const double>)>* f;
  int max_evals;
  int evals = 0;
  std::vector<double> best_x;
  double best = kInf;
};

double trampoline(const gsl_vector* v, void* raw) {
  auto& ctx = *static_cast<Context*>(raw);
  // Past the budget the simplex only sees rejections; the caller stops after
  // the current iteration.
  if (ctx.evals >= ctx.max_evals) return kInf;
  ++ctx.evals;
  const std::span<const double> x(v->data, v->size);
  double val = (*ctx.f)(x);
  if (std::isnan(val)) val = kInf;
  if (val < ctx.best) {
    ctx.best = val;
    ctx.best_x.assign(x.begin(), x.end());
  }
  return val;
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts) {
  static std::once_flag quiet;
  std::call_once(quiet, [] { gsl_set_error_handler_off(); });

  NelderMeadResult res;
  const std::size_t n = x0.size();
  if (n == 0) {
    res.value = f(x0);
    res.evals = 1;
    res.converged = true;
    return res;
  }

  Context ctx{&f, opts.max_evals, 0, {}, kInf};
  gsl_multimin_function fn{&trampoline, n, &ctx};
  std::unique_ptr<gsl_vector, VectorDeleter> start(gsl_vector_alloc(n)), step(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(start.get(), i, x0[i]);
    gsl_vector_set(step.get(), i, opts.initial_step);
  }
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> nm(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  int status = gsl_multimin_fminimizer_set(nm.get(), &fn, start.get(), step.get());
  while (status == GSL_SUCCESS && ctx.evals < opts.max_evals) {
    status = gsl_multimin_fminimizer_iterate(nm.get());
    if (status != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm.get()), opts.x_tol) == GSL_SUCCESS) {
      res.converged = true;
      break;
    }
  }

  res.x = ctx.best_x.empty() ? x0 : ctx.best_x;
  res.value = ctx.best;
  res.evals = ctx.evals;
  return res;
}

}  // namespace semsec

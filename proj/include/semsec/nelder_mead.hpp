#pragma once

#include <functional>
#include <span>
#include <vector>

namespace semsec {

struct NelderMeadOptions {
  int max_evals = 2000;
  double initial_step = 0.5;
  /// Stop when the simplex size (mean vertex distance to the centroid) falls
  /// below. Much smaller values are unreachable once f is flat to rounding.
  double x_tol = 1e-7;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Derivative-free minimization with GSL's nmsimplex2. The objective may return
/// +inf (or NaN) to reject a point; the result is the best point evaluated, and
/// the objective is never called more than max_evals times.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts = {});

}  // namespace semsec

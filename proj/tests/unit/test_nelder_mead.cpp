#include <cmath>
#include <limits>

#include <doctest.h>

#include "semsec/nelder_mead.hpp"

using namespace semsec;

TEST_CASE("Nelder-Mead finds the minimum of a shifted quadratic") {
  const auto r = nelder_mead([](std::span<const double> x) {
    return (x[0] - 1) * (x[0] - 1) + 4 * (x[1] + 2) * (x[1] + 2) + 3;
  }, {0.0, 0.0});
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-4));
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("Nelder-Mead on the Rosenbrock valley") {
  NelderMeadOptions o;
  o.max_evals = 20000;
  const auto r = nelder_mead([](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  }, {-1.2, 1.0}, o);
  CHECK(r.value < 1e-8);
  CHECK(r.evals <= o.max_evals);
}

TEST_CASE("Nelder-Mead respects rejected regions and the evaluation budget") {
  NelderMeadOptions o;
  o.max_evals = 300;
  const auto r = nelder_mead([](std::span<const double> x) {
    if (x[0] < 0.5) return std::numeric_limits<double>::infinity();
    return x[0] * x[0];
  }, {2.0}, o);
  CHECK(r.x[0] >= 0.5);
  CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(r.evals <= 300);
}

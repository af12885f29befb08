#pragma once

// Channel and wiretap rates for discrete memoryless channels. The eavesdropper
// channel is always the degraded composition X -> Y -> Z.

#include <span>
#include <vector>

#include "semsec/discrete/pmf.hpp"

namespace semsec::discrete {

/// I(X; Y) for input p_x through dmc_y. Throws ConfigError on size mismatch.
double channel_rate(std::span<const double> p_x, const DMC& dmc_y);

/// I(X; Y) - I(X; Z) with p(z|x) = Σ_y p(z|y) p(y|x).
double secrecy_rate(std::span<const double> p_x, const DMC& dmc_y, const DMC& dmc_z_given_y);

struct CapacityResult {
  double value = 0.0;            // nats
  std::vector<double> input;     // maximizing p_x
  long iterations = 0;
  bool converged = false;
};

/// Blahut-Arimoto channel capacity; stops when the upper and lower bounds on
/// capacity differ by less than tol nats.
CapacityResult channel_capacity(const DMC& dmc_y, double tol = 1e-12, long max_iter = 1000000);

/// max_{p_x} [I(X;Y) - I(X;Z)]. The objective is concave in p_x for degraded
/// channels; binary inputs use a dense grid refined by golden-section search,
/// larger alphabets use multistart Nelder-Mead over softmax coordinates.
CapacityResult secrecy_capacity(const DMC& dmc_y, const DMC& dmc_z_given_y);

}  // namespace semsec::discrete

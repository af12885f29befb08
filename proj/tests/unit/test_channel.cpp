#include <cmath>
#include <random>

#include <doctest.h>

#include "semsec/discrete/channel.hpp"
#include "semsec/errors.hpp"
#include "semsec/units.hpp"

using namespace semsec;
using namespace semsec::discrete;

namespace {
double h2_bits(double p) { return nats_to_bits(binary_entropy(p)); }
}  // namespace

TEST_CASE("channel capacity examples") {
  const auto bsc = channel_capacity(DMC::bsc(0.1));
  CHECK(bsc.converged);
  CHECK(nats_to_bits(bsc.value) == doctest::Approx(1 - h2_bits(0.1)).epsilon(1e-10));
  CHECK(std::abs(nats_to_bits(bsc.value) - 0.53100) < 1e-5);
  CHECK(bsc.input[0] == doctest::Approx(0.5).epsilon(1e-6));

  CHECK(channel_capacity(DMC::identity(4)).value == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(channel_capacity(DMC(2, 2, {0.5, 0.5, 0.5, 0.5})).value == doctest::Approx(0.0).epsilon(1e-12));

  // Z channel: C = log2(1 + (1-p) p^{p/(1-p)}).
  const double p = 0.3;
  const auto z = channel_capacity(DMC(2, 2, {1.0, 0.0, p, 1 - p}));
  CHECK(nats_to_bits(z.value) == doctest::Approx(std::log2(1 + (1 - p) * std::pow(p, p / (1 - p)))).epsilon(1e-9));
}

TEST_CASE("secrecy capacity examples") {
  const auto id = secrecy_capacity(DMC::bsc(0.1), DMC::identity(2));
  CHECK(std::abs(id.value) < 1e-12);

  const auto s = secrecy_capacity(DMC::bsc(0.1), DMC::bsc(0.15));
  const double expected = h2_bits(0.1 * 0.85 + 0.9 * 0.15) - h2_bits(0.1);
  CHECK(nats_to_bits(s.value) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(std::abs(nats_to_bits(s.value) - 0.2912) < 1e-3);
  CHECK(s.input[0] == doctest::Approx(0.5).epsilon(1e-4));

  const auto useless = secrecy_capacity(DMC::identity(3), DMC(3, 1, {1.0, 1.0, 1.0}));
  CHECK(useless.value == doctest::Approx(std::log(3.0)).epsilon(1e-6));
}

TEST_CASE("secrecy rate is bounded by the main channel rate under degradation") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> wy(9), wz(6);
    for (std::size_t r = 0; r < 3; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < 3; ++c) s += (wy[r * 3 + c] = u(rng) + 1e-3);
      for (std::size_t c = 0; c < 3; ++c) wy[r * 3 + c] /= s;
      const double a = u(rng);
      wz[r * 2] = a;
      wz[r * 2 + 1] = 1 - a;
    }
    const DMC y(3, 3, wy), z(3, 2, wz);
    std::vector<double> px{u(rng) + 0.01, u(rng) + 0.01, u(rng) + 0.01};
    const double tot = px[0] + px[1] + px[2];
    for (auto& v : px) v /= tot;
    const double sr = secrecy_rate(px, y, z);
    CHECK(sr >= -1e-12);
    CHECK(sr <= channel_rate(px, y) + 1e-12);
  }
}

TEST_CASE("multi-letter secrecy capacity dominates random inputs") {
  const DMC y(3, 3, {0.8, 0.1, 0.1, 0.1, 0.8, 0.1, 0.2, 0.2, 0.6});
  const DMC z(3, 2, {0.9, 0.1, 0.2, 0.8, 0.5, 0.5});
  const auto cs = secrecy_capacity(y, z);
  std::mt19937_64 rng(4);
  std::exponential_distribution<double> e(1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> px{e(rng), e(rng), e(rng)};
    const double tot = px[0] + px[1] + px[2];
    for (auto& v : px) v /= tot;
    CHECK(secrecy_rate(px, y, z) <= cs.value + 1e-9);
  }
  CHECK(secrecy_rate(cs.input, y, z) == doctest::Approx(cs.value).epsilon(1e-12));
}

TEST_CASE("channel size mismatches are rejected") {
  const std::vector<double> px{0.5, 0.5};
  CHECK_THROWS_AS(channel_rate(px, DMC::identity(3)), ConfigError);
  CHECK_THROWS_AS(secrecy_rate(px, DMC::bsc(0.1), DMC::identity(3)), ConfigError);
}

#include <cmath>

#include <doctest.h>

#include "semsec/philox.hpp"

using namespace semsec;

TEST_CASE("Philox4x32-10 known answers") {
  const Philox4x32 zero(Philox4x32::Key{0, 0});
  CHECK(zero({0, 0, 0, 0}) == Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  const Philox4x32 ones(Philox4x32::Key{0xffffffffu, 0xffffffffu});
  CHECK(ones({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}) ==
        Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  const Philox4x32 pi(Philox4x32::Key{0xa4093822u, 0x299f31d0u});
  CHECK(pi({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}) ==
        Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("uniforms stay in (0, 1] and normals have unit moments") {
  CHECK(uniform_open0(0, 0) > 0.0);
  CHECK(uniform_open0(0xffffffffu, 0xffffffffu) <= 1.0);
  PhiloxStream s(7, 0, 0);
  double m = 0.0, v = 0.0;
  const int n = 200000;
  for (int i = 0; i < n / 2; ++i) {
    const auto [a, b] = s.normal_pair();
    m += a + b;
    v += a * a + b * b;
  }
  m /= n;
  v /= n;
  CHECK(std::abs(m) < 5 / std::sqrt(n));
  CHECK(std::abs(v - 1) < 5 * std::sqrt(2.0 / n));
}

TEST_CASE("streams are pure functions of seed and stream id") {
  PhiloxStream a(3, 1, 2), b(3, 1, 2), c(3, 1, 3);
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x != c.uniform());
  }
}

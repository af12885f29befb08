#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <doctest.h>

#include "semsec/discrete/pmf.hpp"
#include "semsec/errors.hpp"
#include "semsec/units.hpp"

using namespace semsec;
using namespace semsec::discrete;

namespace {
double h2_bits(double p) { return nats_to_bits(binary_entropy(p)); }

JointPMF dsbs(double flip) {
  return JointPMF({2, 2}, {0.5 * (1 - flip), 0.5 * flip, 0.5 * flip, 0.5 * (1 - flip)});
}

JointPMF random_joint(std::mt19937_64& rng, std::vector<std::size_t> dims) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  for (auto& v : p) v = e(rng);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= s;
  return JointPMF(std::move(dims), std::move(p));
}
}  // namespace

TEST_CASE("entropy and mutual information examples") {
  CHECK(nats_to_bits(entropy(std::vector<double>{0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));
  const auto indep = JointPMF::product(JointPMF::from_vector({0.3, 0.7}), JointPMF::from_vector({0.2, 0.5, 0.3}));
  CHECK(std::abs(mutual_information(indep, {0}, {1})) < 1e-15);
  CHECK(nats_to_bits(mutual_information(dsbs(0.11), {0}, {1})) == doctest::Approx(1 - h2_bits(0.11)).epsilon(1e-13));
  CHECK(nats_to_bits(mutual_information(dsbs(0.11), {0}, {1})) == doctest::Approx(0.50009).epsilon(1e-5));
  CHECK(entropy(std::vector<double>{1.0, 0.0}) == 0.0);
}

TEST_CASE("PMF validation") {
  CHECK_THROWS_AS(JointPMF({2}, {0.5, 0.6}), ConfigError);
  CHECK_THROWS_AS(JointPMF({2}, {1.1, -0.1}), ConfigError);
  CHECK_THROWS_AS(JointPMF({2, 2}, {1.0}), ConfigError);
  CHECK_THROWS_AS(DMC(2, 2, {0.5, 0.5, 0.4, 0.5}), ConfigError);
  CHECK_THROWS_AS(DistortionMatrix(1, 2, {0.0, -1.0}), ConfigError);
  CHECK_THROWS_AS(DistortionMatrix(1, 2, {0.0, INFINITY}), ConfigError);
}

TEST_CASE("marginalization preserves mass") {
  std::mt19937_64 rng(3);
  const auto j = random_joint(rng, {2, 3, 4});
  for (const Axes& a : {Axes{0}, Axes{1}, Axes{2}, Axes{0, 2}, Axes{2, 1}}) {
    const auto m = j.marginal(a);
    CHECK(std::accumulate(m.probs().begin(), m.probs().end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto m = j.marginal({2, 0});
  CHECK(m.dims() == std::vector<std::size_t>{4, 2});
  const std::size_t i[3] = {1, 0, 3};
  const std::size_t k[3] = {1, 1, 3};
  const std::size_t l[3] = {1, 2, 3};
  const std::size_t mi[2] = {3, 1};
  CHECK(m.at(mi) == doctest::Approx(j.at(i) + j.at(k) + j.at(l)).epsilon(1e-15));
}

TEST_CASE("conditional measures are nonnegative and satisfy the chain rule") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto j = random_joint(rng, {2, 3, 2});
    const double i_ab = mutual_information(j, {0}, {1});
    const double i_ac_b = conditional_mi(j, {0}, {2}, {1});
    CHECK(i_ab >= 0.0);
    CHECK(i_ac_b >= 0.0);
    CHECK(mutual_information(j, {0}, {1, 2}) == doctest::Approx(i_ab + i_ac_b).epsilon(1e-12));
    CHECK(conditional_entropy(j, {0}, {1}) ==
          doctest::Approx(entropy(j, {0, 1}) - entropy(j, {1})).epsilon(1e-12));
  }
}

TEST_CASE("data processing through composed channels") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_dmc = [&](std::size_t in, std::size_t out) {
    std::vector<double> w(in * out);
    for (std::size_t x = 0; x < in; ++x) {
      double s = 0.0;
      for (std::size_t y = 0; y < out; ++y) s += (w[x * out + y] = u(rng) + 1e-3);
      for (std::size_t y = 0; y < out; ++y) w[x * out + y] /= s;
    }
    return DMC(in, out, std::move(w));
  };
  for (int t = 0; t < 100; ++t) {
    const auto pu = random_joint(rng, {3});
    const auto j = pu.append_channel(0, random_dmc(3, 4)).append_channel(1, random_dmc(4, 3));
    CHECK(mutual_information(j, {0}, {2}) <= mutual_information(j, {1}, {2}) + 1e-12);
    CHECK(mutual_information(j, {0}, {2}) <= mutual_information(j, {0}, {1}) + 1e-12);
  }
}

TEST_CASE("information measures are invariant under relabeling") {
  std::mt19937_64 rng(13);
  const auto j = random_joint(rng, {3, 2, 4});
  const std::size_t perm0[3] = {2, 0, 1};
  const std::size_t perm2[4] = {3, 1, 0, 2};
  const auto r = j.relabel(0, perm0).relabel(2, perm2);
  CHECK(entropy(r) == doctest::Approx(entropy(j)).epsilon(1e-14));
  CHECK(mutual_information(r, {0}, {2}) == doctest::Approx(mutual_information(j, {0}, {2})).epsilon(1e-13));
  CHECK(conditional_mi(r, {0}, {2}, {1}) == doctest::Approx(conditional_mi(j, {0}, {2}, {1})).epsilon(1e-13));
  const std::size_t a[3] = {0, 1, 0};
  const std::size_t b[3] = {2, 1, 3};
  CHECK(r.at(b) == j.at(a));
}

TEST_CASE("channel composition and output") {
  const auto c = DMC::bsc(0.1).then(DMC::bsc(0.15));
  CHECK(c(0, 1) == doctest::Approx(0.22).epsilon(1e-15));
  const std::vector<double> px{0.3, 0.7};
  const auto q = DMC::bsc(0.1).output(px);
  CHECK(q[0] == doctest::Approx(0.3 * 0.9 + 0.7 * 0.1));
  CHECK_THROWS_AS(DMC::bsc(0.1).then(DMC::identity(3)), ConfigError);
}

TEST_CASE("plain-text matrix round trip") {
  std::istringstream in("# a 2x2 joint\n2 2\n0.1 0.2\n  0.3 0.4 # trailing comment\n");
  const auto t = read_text_tensor(in);
  CHECK(t.dims == std::vector<std::size_t>{2, 2});
  CHECK(t.values == std::vector<double>{0.1, 0.2, 0.3, 0.4});
  std::ostringstream out;
  write_text_tensor(out, t);
  std::istringstream back(out.str());
  const auto t2 = read_text_tensor(back);
  CHECK(t2.values == t.values);

  std::istringstream short_body("2 2\n0.1 0.2 0.3\n");
  CHECK_THROWS_AS(read_text_tensor(short_body), ConfigError);
  std::istringstream bad("2\n0.5 x\n");
  CHECK_THROWS_AS(read_text_tensor(bad), ConfigError);
  CHECK_THROWS_AS(read_text_tensor_file("/nonexistent/file.txt"), IoError);
}

#include <cmath>

#include <doctest.h>

#include "oracles/outer_scan.hpp"
#include "semsec/errors.hpp"
#include "semsec/outer_bound.hpp"
#include "semsec/units.hpp"

using namespace semsec;

namespace {
const GaussianSource kRef{0.7, 1.0, 0.5};
const GaussianWiretapChannel kCh{1.0, 0.10, 0.15};

RegionPoint point(double R, double D_s, double D_u, double ds, double du, double dsu, double R_k = 0.0) {
  RegionPoint p;
  p.R = R;
  p.R_k = R_k;
  p.D_s = D_s;
  p.D_u = D_u;
  p.delta_s = ds;
  p.delta_u = du;
  p.delta_su = dsu;
  return p;
}
}  // namespace

TEST_CASE("outer_feasible examples") {
  const auto loose = outer_feasible(point(1.0, 1.4, 1.0, -10, -10, -10), kRef, kCh);
  CHECK(loose.feasible);
  CHECK(loose.slacks.size() == 5);

  const auto below = outer_feasible(point(1.0, 0.40, 1.0, -10, -10, -10), kRef, kCh);
  CHECK_FALSE(below.feasible);
  CHECK(*below.slack(outer_slack::kDsFloor) < 0.0);

  const auto no_rate = outer_feasible(point(0.0, 1.4, 0.5, -10, -10, -10), kRef, kCh);
  CHECK_FALSE(no_rate.feasible);
  CHECK(nats_to_bits(*no_rate.slack(outer_slack::kRate)) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("max_equivocations examples") {
  const auto e = max_equivocations(1.0, 0.0, 0.6, 0.25, kRef, kCh);
  // C_s + ½ log2(2πe · 0.25) = 0.568745 + 1.047102.
  const double c_s = 0.5 * std::log2(11.0 / 5.0);
  CHECK(nats_to_bits(e.u) == doctest::Approx(c_s + 0.5 * std::log2(2 * M_PI * M_E * 0.25)).epsilon(1e-12));
  CHECK(nats_to_bits(e.u) == doctest::Approx(1.61585).epsilon(1e-5));

  const double one_bit = bits_to_nats(1.0);
  const auto shifted = max_equivocations(1.0, one_bit, 0.6, 0.25, kRef, kCh);
  CHECK(shifted.u - e.u == doctest::Approx(one_bit).epsilon(1e-13));
  CHECK(shifted.s - e.s == doctest::Approx(one_bit).epsilon(1e-13));
  CHECK(shifted.su - e.su == doctest::Approx(one_bit).epsilon(1e-13));

  const GaussianWiretapChannel open{1.0, 0.1, 0.0};
  CHECK(max_equivocations(1.0, 0.0, 1e6, 1.0, kRef, open).s == 0.0);

  CHECK_THROWS_AS(max_equivocations(1.0, 0.0, 0.45, 1.0, kRef, kCh), InfeasibleError);
  CHECK_THROWS_AS(max_equivocations(0.0, 0.0, 0.6, 0.5, kRef, kCh), InfeasibleError);
}

TEST_CASE("max_equivocations is nondecreasing in every argument") {
  const double base_R = 2.0, base_rk = 0.1, base_ds = 0.5, base_du = 0.5;
  const auto ref = max_equivocations(base_R, base_rk, base_ds, base_du, kRef, kCh);
  for (int i = 1; i <= 20; ++i) {
    const double f = 1.0 + 0.05 * i;
    for (const auto& e : {max_equivocations(base_R * f, base_rk, base_ds, base_du, kRef, kCh),
                          max_equivocations(base_R, base_rk * f, base_ds, base_du, kRef, kCh),
                          max_equivocations(base_R, base_rk, base_ds * f, base_du, kRef, kCh),
                          max_equivocations(base_R, base_rk, base_ds, base_du * f, kRef, kCh)}) {
      CHECK(e.s >= ref.s - 1e-15);
      CHECK(e.u >= ref.u - 1e-15);
      CHECK(e.su >= ref.su - 1e-15);
    }
  }
}

TEST_CASE("trace_outer cells pass outer_feasible and R monotonicity") {
  OuterGrid g{{0.5, 2, 3.5, 5, 6.5, 8, 10}, {0.05, 0.2, 0.5, 0.8, 1.0}, {0.7}};
  const auto targets = secrecy_targets(SecrecyMode::full_semantic, kRef);
  const auto rows = trace_outer(kRef, kCh, 0.0, g, targets);
  REQUIRE(rows.size() == g.R.size() * g.D_u.size());
  for (const auto& r : rows) {
    if (std::isnan(r.D_s)) continue;
    const auto rep = outer_feasible(point(r.R, r.D_s, r.D_u, targets.s, targets.u, targets.su), kRef, kCh);
    CHECK(rep.feasible);
    CHECK(rep.min_slack() >= -1e-9);
  }
  for (std::size_t j = 0; j < g.D_u.size(); ++j)
    for (std::size_t i = 1; i < g.R.size(); ++i) {
      const double prev = rows[(i - 1) * g.D_u.size() + j].D_s;
      const double cur = rows[i * g.D_u.size() + j].D_s;
      if (std::isnan(prev)) continue;
      REQUIRE_FALSE(std::isnan(cur));
      CHECK(cur <= prev + 1e-12);
    }
}

TEST_CASE("trace_outer matches a dense-scan oracle") {
  const auto targets = secrecy_targets(SecrecyMode::full_semantic, kRef);
  const oracle::OuterModel m{0.7, 1.0, 0.5, 1.0, 0.1, 0.15, 0.0, targets.s, targets.u, targets.su};
  OuterGrid g{{1.0, 3.2, 4.0, 6.0, 9.0}, {0.1, 0.3, 0.9}, {0.7}};
  const auto rows = trace_outer(kRef, kCh, 0.0, g, targets);
  for (const auto& r : rows) {
    const double want = m.boundary(r.R, r.D_u, 0.7);
    CAPTURE(r.R);
    CAPTURE(r.D_u);
    CHECK(std::isnan(want) == std::isnan(r.D_s));
    if (!std::isnan(want)) CHECK(std::abs(want - r.D_s) <= 1e-6);
  }
}

TEST_CASE("trace_outer at zero rate is unreachable under full semantic secrecy") {
  OuterGrid g{{0.0}, {0.5, 1.0}, {0.7}};
  const auto rows = trace_outer(kRef, kCh, 0.0, g, secrecy_targets(SecrecyMode::full_semantic, kRef));
  for (const auto& r : rows) CHECK(std::isnan(r.D_s));
}

TEST_CASE("serial and parallel traces agree bit for bit") {
  OuterGrid g{{1, 2, 4, 6, 8}, {0.1, 0.4, 0.7, 1.0}, {0.7}};
  const auto t = secrecy_targets(SecrecyMode::full_semantic, kRef);
  const auto a = trace_outer(kRef, kCh, 0.0, g, t, Execution::serial);
  const auto b = trace_outer(kRef, kCh, 0.0, g, t, Execution::parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i].D_s == b[i].D_s || (std::isnan(a[i].D_s) && std::isnan(b[i].D_s))));
  }
}

TEST_CASE("grid validation") {
  const auto t = secrecy_targets(SecrecyMode::full_semantic, kRef);
  CHECK_THROWS_AS(trace_outer(kRef, kCh, 0.0, OuterGrid{{}, {0.5}, {0.7}}, t), ConfigError);
  CHECK_THROWS_AS(trace_outer(kRef, kCh, 0.0, OuterGrid{{1, 1}, {0.5}, {0.7}}, t), ConfigError);
  CHECK_THROWS_AS(trace_outer(kRef, kCh, 0.0, OuterGrid{{1}, {0.5, 0.2}, {0.7}}, t), ConfigError);
}

TEST_CASE("surface_outer covers the full grid") {
  OuterGrid g{{1, 4}, {0.3, 1.0}, {0.5, 0.6, 0.7}};
  const auto rows = surface_outer(kRef, kCh, 0.0, g);
  CHECK(rows.size() == 12);
  for (const auto& r : rows)
    if (r.feasible_rate) CHECK(std::isfinite(r.delta_max.u));
}

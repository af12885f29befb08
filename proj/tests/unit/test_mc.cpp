#include <cmath>

#include <Eigen/Eigenvalues>
#include <doctest.h>
#include <nlohmann/json.hpp>

#include "semsec/errors.hpp"
#include "semsec/inner_bound.hpp"
#include "semsec/mc/mc_validate.hpp"

using namespace semsec;
using namespace semsec::mc;

namespace {
const GaussianSource kRef{0.7, 1.0, 0.5};
const GaussianWiretapChannel kCh{1.0, 0.10, 0.15};

InnerParams fig_params() { return InnerParams::equal_split(kCh, 1.0, 1.0, 0.7, 0.45); }

McConfig config(std::uint64_t n, Execution exec, std::uint64_t chunk = 4096) {
  McConfig c;
  c.n_samples = n;
  c.chunk = chunk;
  c.seed = 42;
  c.exec = exec;
  return c;
}
}  // namespace

TEST_CASE("serial and parallel sampling agree bit for bit") {
  const auto a = sample_system(kRef, kCh, fig_params(), config(20000, Execution::serial, 3000));
  const auto b = sample_system(kRef, kCh, fig_params(), config(20000, Execution::parallel, 3000));
  CHECK(a.D_s == b.D_s);
  CHECK(a.D_u == b.D_u);
  CHECK(a.D_u_joint == b.D_u_joint);
  CHECK(a.cov == b.cov);
  CHECK(a.mean == b.mean);
}

TEST_CASE("different seeds give different draws") {
  auto c = config(5000, Execution::serial);
  const auto a = sample_system(kRef, kCh, fig_params(), c);
  c.seed = 43;
  const auto b = sample_system(kRef, kCh, fig_params(), c);
  CHECK(a.D_s != b.D_s);
}

TEST_CASE("sampled statistics agree with the closed forms") {
  const auto rep = validate_inner_point(kRef, kCh, fig_params(), 3.0, config(200000, Execution::parallel));
  INFO(rep.diff());
  CHECK(rep.pass);
  CHECK(rep.checks.size() == 8 + 3 + 55);
  CHECK(std::abs(rep.mc.D_s / rep.mc.D_s_closed - 1) < 0.02);
  CHECK(std::abs(rep.mc.D_u / rep.mc.D_u_closed - 1) < 0.02);
  const auto d = mmse_distortions(fig_params(), kRef);
  CHECK(rep.mc.D_s_closed == doctest::Approx(d.s).epsilon(1e-12));
  CHECK(rep.mc.D_u_closed == doctest::Approx(d.u).epsilon(1e-12));
  CHECK(rep.mc.D_u_joint_closed <= rep.mc.D_u_closed + 1e-12);
}

TEST_CASE("a perturbed closed form is flagged by name") {
  const auto p = fig_params();
  const auto mc = sample_system(kRef, kCh, p, config(20000, Execution::serial));
  auto expected = closed_forms(kRef, kCh, p);
  const auto logdet = logdet_forms(kRef, kCh, p);
  CHECK(check_against(mc, expected, logdet).pass);
  for (auto& t : expected.terms)
    if (t.name == "I(S;A_p)") t.value += 0.1;
  const auto rep = check_against(mc, expected, logdet);
  CHECK_FALSE(rep.pass);
  CHECK(rep.diff().find("I(S;A_p)") != std::string::npos);
  int failed = 0;
  for (const auto& c : rep.checks) failed += !c.pass;
  CHECK(failed == 1);

  auto shifted = closed_forms(kRef, kCh, p);
  shifted.D_s *= 1.1;
  CHECK_FALSE(check_against(mc, shifted, logdet).pass);
}

TEST_CASE("tiny sample counts skip statistics with a warning") {
  const auto rep = validate_inner_point(kRef, kCh, fig_params(), 3.0, config(1, Execution::serial));
  CHECK(rep.pass);
  CHECK_FALSE(rep.warnings.empty());
  CHECK(rep.checks.size() == 8);
  CHECK_THROWS_AS(sample_system(kRef, kCh, fig_params(), config(0, Execution::serial)), ConfigError);
}

TEST_CASE("analytic covariance is symmetric positive semidefinite") {
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    const auto c = analytic_cov(kRef, kCh, InnerParams::equal_split(kCh, a, 1.0 - a / 4, 0.3, 1.2));
    CHECK(c.rows() == static_cast<Eigen::Index>(kExtended));
    CHECK((c - c.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
  }
  const auto c = analytic_cov(kRef, kCh, fig_params());
  CHECK(c(var::S, var::S) == doctest::Approx(0.7));
  CHECK(c(var::S, var::U) == doctest::Approx(0.5));
  CHECK(c(var::Y, var::Y) == doctest::Approx(kCh.power + kCh.noise_main));
  CHECK(c(var::Z, var::Z) == doctest::Approx(kCh.power + kCh.noise_total()));
}

TEST_CASE("log-det terms reproduce the closed forms") {
  const auto p = fig_params();
  const auto cf = closed_forms(kRef, kCh, p);
  const auto ld = logdet_forms(kRef, kCh, p);
  REQUIRE(cf.terms.size() == ld.terms.size());
  for (std::size_t i = 0; i < cf.terms.size(); ++i) {
    INFO(cf.terms[i].name);
    CHECK(cf.terms[i].name == ld.terms[i].name);
    CHECK(std::abs(cf.terms[i].value - ld.terms[i].value) < kTermTolerance);
  }
  const auto cov = analytic_cov(kRef, kCh, p);
  // I(S; A_p) = ½ ln(1 + α1² P_S / P_Ãp).
  CHECK(gaussian_mi(cov, {var::S}, {var::Ap}) ==
        doctest::Approx(0.5 * std::log(1 + 0.7 / 0.7)).epsilon(1e-12));
  CHECK(gaussian_cond_entropy(cov, {var::S}) == doctest::Approx(gaussian_entropy(0.7)).epsilon(1e-12));
  // X -> Y -> Z is a Markov chain; given X the noises make Y and Z dependent.
  CHECK(std::abs(gaussian_mi(cov, {var::X}, {var::Z}, {var::Y})) < 1e-10);
  CHECK(gaussian_mi(cov, {var::Y}, {var::Z}, {var::X}) ==
        doctest::Approx(0.5 * std::log(kCh.noise_total() / kCh.noise_eve)).epsilon(1e-10));
}

TEST_CASE("report serialization") {
  const auto rep = validate_inner_point(kRef, kCh, fig_params(), 3.0, config(500, Execution::serial));
  const auto j = to_json(rep, LogBase::bits);
  CHECK(j.contains("checks"));
  CHECK(j.contains("warnings"));
  CHECK(j.dump() == to_json(rep, LogBase::bits).dump());
}

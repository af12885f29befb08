#include <cmath>

#include <doctest.h>

#include "oracles/binary_wiretap.hpp"
#include "semsec/discrete/theorems.hpp"
#include "semsec/errors.hpp"
#include "semsec/units.hpp"

using namespace semsec;
using namespace semsec::discrete;

namespace {
double h2_bits(double p) { return nats_to_bits(binary_entropy(p)); }
using oracle::star;

JointPMF diagonal_source() { return JointPMF({2, 2}, {0.5, 0.0, 0.0, 0.5}); }

JointPMF source_aux(double u0, double ac, double ap, double bp) {
  oracle::BinaryWiretap w;
  w.u0 = u0, w.ac = ac, w.ap = ap, w.bp = bp;
  return w.source();
}

JointPMF channel_aux(double a, double b, double x) {
  oracle::BinaryWiretap w;
  w.a = a, w.b = b, w.x = x;
  return w.channel();
}

const ReconMaps kRecon = oracle::BinaryWiretap::recon();
}  // namespace

TEST_CASE("converse terms on a binary copy source") {
  const auto h = DistortionMatrix::hamming(2);
  const auto t = converse_terms(diagonal_source(), h, h, 0.2, 0.1, DMC::bsc(0.1), DMC::bsc(0.15));
  CHECK(nats_to_bits(t.R_u) == doctest::Approx(1 - h2_bits(0.1)).epsilon(1e-6));
  CHECK(nats_to_bits(t.R_s) == doctest::Approx(1 - h2_bits(0.2)).epsilon(1e-6));
  CHECK(nats_to_bits(t.R_joint) == doctest::Approx(1 - h2_bits(0.1)).epsilon(1e-5));
  CHECK(nats_to_bits(t.capacity) == doctest::Approx(1 - h2_bits(0.1)).epsilon(1e-9));
  CHECK(nats_to_bits(t.secrecy) == doctest::Approx(h2_bits(star(0.1, 0.15)) - h2_bits(0.1)).epsilon(1e-8));
  CHECK(t.H_S == doctest::Approx(std::log(2.0)));
  CHECK(t.H_SU == doctest::Approx(std::log(2.0)));
}

TEST_CASE("converse detects a rate violation of 0.1 bit") {
  const auto h = DistortionMatrix::hamming(2);
  const double need = 1 - h2_bits(0.1), cap = 1 - h2_bits(0.1);
  RegionPoint pt;
  pt.D_s = 0.3;
  pt.D_u = 0.1;
  pt.R = (need - 0.1) / cap;
  const auto rep = converse_check_discrete(pt, diagonal_source(), h, h, DMC::bsc(0.1), DMC::bsc(0.15));
  CHECK_FALSE(rep.feasible);
  CHECK(nats_to_bits(*rep.slack(converse_slack::kRateObserved)) == doctest::Approx(-0.1).epsilon(1e-5));
  CHECK(*rep.slack(converse_slack::kRateSemantic) > 0.0);

  pt.R = (need + 0.1) / cap;
  const auto ok = converse_check_discrete(pt, diagonal_source(), h, h, DMC::bsc(0.1), DMC::bsc(0.15));
  CHECK(ok.feasible);
  CHECK(ok.slacks.size() == 6);
}

TEST_CASE("converse equivocation slacks") {
  const auto h = DistortionMatrix::hamming(2);
  const auto t = converse_terms(diagonal_source(), h, h, 0.2, 0.2, DMC::bsc(0.1), DMC::bsc(0.15));
  RegionPoint pt{.R = 2.0, .R_k = 0.05, .D_s = 0.2, .D_u = 0.2, .delta_s = 0.3, .delta_u = 0.1, .delta_su = 0.2};
  const auto rep = converse_slacks(pt, t);
  const double leak = pt.R_k + pt.R * t.secrecy;
  CHECK(*rep.slack(converse_slack::kDeltaS) == doctest::Approx(leak - t.R_s + t.H_S - 0.3));
  CHECK(*rep.slack(converse_slack::kDeltaU) == doctest::Approx(leak - t.R_u + t.H_U - 0.1));
  CHECK(*rep.slack(converse_slack::kDeltaSU) == doctest::Approx(leak - t.R_joint + t.H_SU - 0.2));
}

TEST_CASE("converse with an unreachable semantic distortion") {
  // S seen through a 0.2 flip: no estimator of S from U does better than 0.2.
  const JointPMF p({2, 2}, {0.4, 0.1, 0.1, 0.4});
  const auto h = DistortionMatrix::hamming(2);
  RegionPoint pt{.R = 5.0, .R_k = 0.0, .D_s = 0.1, .D_u = 0.1};
  const auto rep = converse_check_discrete(pt, p, h, h, DMC::bsc(0.1), DMC::bsc(0.15));
  CHECK_FALSE(rep.feasible);
  CHECK(std::isinf(*rep.slack(converse_slack::kRateSemantic)));
  CHECK(*rep.slack(converse_slack::kRateObserved) > 0.0);
  pt.R = -1.0;
  CHECK_THROWS_AS(converse_check_discrete(pt, p, h, h, DMC::bsc(0.1), DMC::bsc(0.15)), DomainError);
}

TEST_CASE("achievability terms on a hand-built binary instance") {
  const oracle::BinaryWiretap w;
  const double R = 1.5;
  const auto h = DistortionMatrix::hamming(2);
  const auto res = achievability_check_discrete(w.source(), w.channel(), DMC::bsc(w.e1), DMC::bsc(w.e2),
                                                oracle::BinaryWiretap::recon(), h, h, R);
  const auto& t = res.terms;
  const auto e = w.expected_bits();
  auto bits = [](double v) { return nats_to_bits(v); };
  const double tol = 1e-12;
  CHECK(bits(t.I_S_Ac) == doctest::Approx(e.I_S_Ac).epsilon(tol));
  CHECK(bits(t.I_S_AcAp) == doctest::Approx(e.I_S_AcAp).epsilon(tol));
  CHECK(std::abs(t.I_U_Bc_given_SAc) < 1e-14);
  CHECK(std::abs(t.I_U_Bc_given_Ac) < 1e-14);
  CHECK(bits(t.I_U_Bp_given_SAcApBc) == doctest::Approx(e.I_U_Bp_given_SAcApBc).epsilon(tol));
  CHECK(bits(t.H_S_given_AcAp) == doctest::Approx(e.H_S_given_AcAp).epsilon(tol));
  CHECK(bits(t.H_U) == doctest::Approx(e.H_U).epsilon(tol));
  CHECK(bits(t.H_SU) == doctest::Approx(e.H_SU).epsilon(tol));
  CHECK(bits(t.I_Qc_Y) == doctest::Approx(e.I_Qc_Y).epsilon(tol));
  CHECK(bits(t.I_QcQp_Y) == doctest::Approx(e.I_QcQp_Y).epsilon(tol));
  CHECK(bits(t.I_Wc_Y_given_Qc) == doctest::Approx(e.I_Wc_Y_given_Qc).epsilon(tol));
  CHECK(bits(t.I_X_Y_given_QcQpWc) == doctest::Approx(e.I_X_Y_given_QcQpWc).epsilon(tol));
  CHECK(bits(t.I_Qp_Y_given_Qc) == doctest::Approx(e.I_Qp_Y_given_Qc).epsilon(tol));
  CHECK(bits(t.H_Z_given_X) == doctest::Approx(e.H_Z_given_X).epsilon(tol));
  CHECK(bits(t.H_Z_given_Qc) == doctest::Approx(e.H_Z_given_Qc).epsilon(tol));
  CHECK(bits(t.H_Z_given_QcWc) == doctest::Approx(e.H_Z_given_QcWc).epsilon(tol));

  CHECK(res.distortion.s == doctest::Approx(w.ap).epsilon(1e-14));
  CHECK(res.distortion.u == doctest::Approx(w.bp).epsilon(1e-14));

  const double chan_u = t.H_Z_given_X - t.H_Z_given_QcWc + t.I_Qp_Y_given_Qc + t.I_X_Y_given_QcQpWc;
  CHECK(res.delta.s ==
        doctest::Approx(t.H_S_given_AcAp + R * (t.H_Z_given_X - t.H_Z_given_Qc + t.I_Qp_Y_given_Qc)));
  CHECK(res.delta.u ==
        doctest::Approx(t.H_U - t.I_S_AcAp - t.I_U_Bc_given_Ac - t.I_U_Bp_given_SAcApBc + R * chan_u));
  CHECK(res.delta.su ==
        doctest::Approx(t.H_SU - t.I_S_AcAp - t.I_U_Bp_given_SAcApBc - t.I_U_Bc_given_SAc + R * chan_u));
  CHECK(*res.rates.slack(achievability_slack::kSemanticTotal) ==
        doctest::Approx(R * t.I_QcQp_Y - t.I_S_AcAp));
  CHECK(res.rates.slacks.size() == 4);
}

TEST_CASE("achievability edge cases") {
  const auto h = DistortionMatrix::hamming(2);
  const auto lossless = achievability_check_discrete(source_aux(0.1, 0.0, 0.0, 0.0), channel_aux(0.1, 0.1, 0.1),
                                                     DMC::bsc(0.1), DMC::bsc(0.15), kRecon, h, h, 1.0);
  CHECK(lossless.distortion.s == 0.0);
  CHECK(lossless.distortion.u == 0.0);

  const auto indep = achievability_check_discrete(source_aux(0.1, 0.5, 0.5, 0.0), channel_aux(0.1, 0.1, 0.1),
                                                  DMC::bsc(0.1), DMC::bsc(0.15), kRecon, h, h, 0.0);
  CHECK(indep.terms.H_S_given_AcAp == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(indep.delta.s == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(indep.distortion.s == doctest::Approx(0.5));
}

TEST_CASE("achievability claims and input checks") {
  const auto h = DistortionMatrix::hamming(2);
  const auto aux = source_aux(0.1, 0.2, 0.05, 0.08);
  const auto res = achievability_check_discrete(aux, channel_aux(0.1, 0.15, 0.05), DMC::bsc(0.1), DMC::bsc(0.15),
                                                kRecon, h, h, 3.0);
  const auto ok = check_claim(res, 0.06, 0.09, {res.delta.s - 0.01, res.delta.u - 0.01, res.delta.su - 0.01});
  CHECK(ok.slacks.size() == 9);
  CHECK(*ok.slack("distortion_s") == doctest::Approx(0.01));
  CHECK(*ok.slack("delta_u") == doctest::Approx(0.01));
  const auto bad = check_claim(res, 0.04, 0.09, res.delta);
  CHECK_FALSE(bad.feasible);

  const JointPMF wrong({2, 2}, {0.25, 0.25, 0.25, 0.25});
  CHECK_THROWS_AS(achievability_check_discrete(aux, channel_aux(0.1, 0.1, 0.1), DMC::bsc(0.1), DMC::bsc(0.15),
                                               kRecon, h, h, 1.0, &wrong),
                  ConfigError);
  const auto right = aux.marginal({aux_axis::S, aux_axis::U});
  CHECK_NOTHROW(achievability_check_discrete(aux, channel_aux(0.1, 0.1, 0.1), DMC::bsc(0.1), DMC::bsc(0.15),
                                             kRecon, h, h, 1.0, &right));
  CHECK_THROWS_AS(achievability_check_discrete(aux, channel_aux(0.1, 0.1, 0.1), DMC::bsc(0.1), DMC::bsc(0.15),
                                               ReconMaps{{0, 1}, {0}}, h, h, 1.0),
                  ConfigError);
  CHECK_THROWS_AS(achievability_check_discrete(aux, channel_aux(0.1, 0.1, 0.1), DMC::bsc(0.1), DMC::bsc(0.15),
                                               kRecon, h, h, -1.0),
                  DomainError);
}

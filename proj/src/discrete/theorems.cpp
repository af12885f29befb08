#include "semsec/discrete/theorems.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "semsec/discrete/channel.hpp"
#include "semsec/errors.hpp"

namespace semsec::discrete {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ba_rate(const BAResult& r, const char* what) {
  if (!r.converged)
    throw SolverError(std::string(what) + " did not converge after " +
                      std::to_string(r.iterations) + " iterations (multipliers " +
                      [&] {
                        std::string s;
                        for (double b : r.multipliers) s += (s.empty() ? "" : ", ") + std::to_string(b);
                        return s;
                      }() + ")");
  return r.rate;
}

template <class F>
double rate_or_inf(F&& f, const char* what) {
  try {
    return ba_rate(f(), what);
  } catch (const InfeasibleError&) {
    return kInf;
  }
}

}  // namespace

ConverseTerms converse_terms(const JointPMF& p_su, const DistortionMatrix& d_s,
                             const DistortionMatrix& d_u, double D_s, double D_u, const DMC& dmc_y,
                             const DMC& dmc_z_given_y, const BAOptions& opts) {
  if (p_su.rank() != 2) throw ConfigError("semantic source PMF must have axes (S, U)");
  ConverseTerms t;
  const auto p_u = p_su.marginal({1}).probs();
  t.R_u = rate_or_inf([&] { return ba_rdf_classic(p_u, d_u, D_u, opts); }, "observed RDF");
  t.R_s = rate_or_inf([&] { return ba_rdf_indirect(p_su, d_s, D_s, opts); }, "indirect RDF");
  t.R_joint = rate_or_inf([&] { return ba_rdf_bivariate(p_su, d_s, d_u, D_s, D_u, opts); },
                          "bivariate RDF");
  const auto cap = channel_capacity(dmc_y);
  if (!cap.converged)
    throw SolverError("channel capacity did not converge after " + std::to_string(cap.iterations) +
                      " iterations");
  t.capacity = cap.value;
  t.secrecy = secrecy_capacity(dmc_y, dmc_z_given_y).value;
  t.H_S = entropy(p_su, {0});
  t.H_U = entropy(p_su, {1});
  t.H_SU = entropy(p_su);
  return t;
}

FeasibilityReport converse_slacks(const RegionPoint& pt, const ConverseTerms& t, double tol) {
  FeasibilityReport rep;
  rep.tolerance = tol;
  const double cap = pt.R * t.capacity;
  const double leak = pt.R_k + pt.R * t.secrecy;
  namespace cs = converse_slack;
  rep.add(cs::kRateObserved, cap - t.R_u);
  rep.add(cs::kRateSemantic, cap - t.R_s);
  rep.add(cs::kRateJoint, cap - t.R_joint);
  rep.add(cs::kDeltaU, leak - t.R_u + t.H_U - pt.delta_u);
  rep.add(cs::kDeltaS, leak - t.R_s + t.H_S - pt.delta_s);
  rep.add(cs::kDeltaSU, leak - t.R_joint + t.H_SU - pt.delta_su);
  return rep;
}

FeasibilityReport converse_check_discrete(const RegionPoint& pt, const JointPMF& p_su,
                                          const DistortionMatrix& d_s, const DistortionMatrix& d_u,
                                          const DMC& dmc_y, const DMC& dmc_z_given_y,
                                          const BAOptions& opts, double tol) {
  if (pt.R < 0.0 || pt.R_k < 0.0) throw DomainError("R and R_k must be nonnegative");
  return converse_slacks(
      pt, converse_terms(p_su, d_s, d_u, pt.D_s, pt.D_u, dmc_y, dmc_z_given_y, opts), tol);
}

AchievabilityResult achievability_check_discrete(const JointPMF& aux, const JointPMF& chan_aux,
                                                 const DMC& dmc_y, const DMC& dmc_z_given_y,
                                                 const ReconMaps& recon, const DistortionMatrix& d_s,
                                                 const DistortionMatrix& d_u, double R,
                                                 const JointPMF* p_su, double tol) {
  using namespace aux_axis;
  if (aux.rank() != 6) throw ConfigError("source auxiliary PMF must have axes (S, U, A_c, A_p, B_c, B_p)");
  if (chan_aux.rank() != 4) throw ConfigError("channel auxiliary PMF must have axes (Q_c, Q_p, W_c, X)");
  if (R < 0.0) throw DomainError("R must be nonnegative");
  const auto& dims = aux.dims();
  if (chan_aux.dims()[3] != dmc_y.in_size()) throw ConfigError("X alphabet does not match the channel input");
  if (dmc_z_given_y.in_size() != dmc_y.out_size())
    throw ConfigError("eavesdropper channel input size must equal main channel output size");
  if (d_s.rows() != dims[S] || d_u.rows() != dims[U])
    throw ConfigError("distortion matrix rows must match the S and U alphabets");
  const std::size_t n_ac_ap = dims[Ac] * dims[Ap];
  if (recon.s.size() != n_ac_ap || recon.u.size() != n_ac_ap * dims[Bc] * dims[Bp])
    throw ConfigError("reconstruction table sizes do not match the auxiliary alphabets");
  for (auto v : recon.s)
    if (v >= d_s.cols()) throw ConfigError("semantic reconstruction letter out of range");
  for (auto v : recon.u)
    if (v >= d_u.cols()) throw ConfigError("observation reconstruction letter out of range");
  if (p_su) {
    const auto m = aux.marginal({S, U});
    if (p_su->dims() != m.dims()) throw ConfigError("p_su alphabet does not match the auxiliary joint");
    for (std::size_t i = 0; i < m.size(); ++i)
      if (std::abs(m.probs()[i] - p_su->probs()[i]) > 1e-9)
        throw ConfigError("auxiliary joint (S, U) marginal differs from p_su by more than 1e-9");
  }

  AchievabilityResult res;
  res.R = R;
  auto& t = res.terms;
  t.I_S_Ac = mutual_information(aux, {S}, {Ac});
  t.I_S_AcAp = mutual_information(aux, {S}, {Ac, Ap});
  t.I_U_Bc_given_SAc = conditional_mi(aux, {U}, {Bc}, {S, Ac});
  t.I_U_Bp_given_SAcApBc = conditional_mi(aux, {U}, {Bp}, {S, Ac, Ap, Bc});
  t.I_U_Bc_given_Ac = conditional_mi(aux, {U}, {Bc}, {Ac});
  t.H_S_given_AcAp = conditional_entropy(aux, {S}, {Ac, Ap});
  t.H_U = entropy(aux, {U});
  t.H_SU = entropy(aux, {S, U});

  const JointPMF ch = chan_aux.append_channel(chan_axis::X, dmc_y)
                          .append_channel(chan_axis::Y, dmc_z_given_y);
  using namespace chan_axis;
  t.I_Qc_Y = mutual_information(ch, {Qc}, {Y});
  t.I_QcQp_Y = mutual_information(ch, {Y}, {Qc, Qp});
  t.I_Wc_Y_given_Qc = conditional_mi(ch, {Wc}, {Y}, {Qc});
  t.I_X_Y_given_QcQpWc = conditional_mi(ch, {X}, {Y}, {Qc, Qp, Wc});
  t.I_Qp_Y_given_Qc = conditional_mi(ch, {Qp}, {Y}, {Qc});
  t.H_Z_given_X = conditional_entropy(ch, {Z}, {X});
  t.H_Z_given_Qc = conditional_entropy(ch, {Z}, {Qc});
  t.H_Z_given_QcWc = conditional_entropy(ch, {Z}, {Qc, Wc});

  res.distortion.s = aux.expect([&](std::span<const std::size_t> i) {
    return d_s(i[S], recon.s[i[aux_axis::Ac] * dims[aux_axis::Ap] + i[aux_axis::Ap]]);
  });
  res.distortion.u = aux.expect([&](std::span<const std::size_t> i) {
    const std::size_t k =
        ((i[aux_axis::Ac] * dims[aux_axis::Ap] + i[aux_axis::Ap]) * dims[aux_axis::Bc] + i[aux_axis::Bc]) *
            dims[aux_axis::Bp] +
        i[aux_axis::Bp];
    return d_u(i[aux_axis::U], recon.u[k]);
  });

  namespace as = achievability_slack;
  res.rates.tolerance = tol;
  res.rates.add(as::kSemanticCommon, R * t.I_Qc_Y - t.I_S_Ac);
  res.rates.add(as::kSemanticTotal, R * t.I_QcQp_Y - t.I_S_AcAp);
  res.rates.add(as::kObservedCommon, R * t.I_Wc_Y_given_Qc - t.I_U_Bc_given_SAc);
  res.rates.add(as::kObservedTotal, R * (t.I_Wc_Y_given_Qc + t.I_X_Y_given_QcQpWc) -
                                        (t.I_U_Bc_given_SAc + t.I_U_Bp_given_SAcApBc));

  const double chan_u =
      t.H_Z_given_X - t.H_Z_given_QcWc + t.I_Qp_Y_given_Qc + t.I_X_Y_given_QcQpWc;
  res.delta.s = t.H_S_given_AcAp + R * (t.H_Z_given_X - t.H_Z_given_Qc + t.I_Qp_Y_given_Qc);
  res.delta.u = t.H_U - t.I_S_AcAp - t.I_U_Bc_given_Ac - t.I_U_Bp_given_SAcApBc + R * chan_u;
  res.delta.su = t.H_SU - t.I_S_AcAp - t.I_U_Bp_given_SAcApBc - t.I_U_Bc_given_SAc + R * chan_u;
  return res;
}

FeasibilityReport check_claim(const AchievabilityResult& res, double D_s, double D_u,
                              const Equivocations& claimed, double tol) {
  FeasibilityReport rep;
  rep.tolerance = tol;
  for (const auto& s : res.rates.slacks) rep.add(s.name, s.value);
  rep.add("distortion_s", D_s - res.distortion.s);
  rep.add("distortion_u", D_u - res.distortion.u);
  rep.add("delta_s", res.delta.s - claimed.s);
  rep.add("delta_u", res.delta.u - claimed.u);
  rep.add("delta_su", res.delta.su - claimed.su);
  return rep;
}

}  // namespace semsec::discrete

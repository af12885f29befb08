#pragma once

// Independent high-precision evaluation of the Gaussian achievable-region
// formulas.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

struct InnerValues {
  double D_s, D_u;
  double delta_s, delta_u, delta_su;  // nats
  double slack_semantic, slack_observed;  // ½[R ln RHS - ln LHS]
  double channel_s, channel_u;
};

template <class T = boost::multiprecision::cpp_bin_float_50>
InnerValues inner_values(double ps_, double pu_, double psu_, double p_, double n1_, double n2_, double a1_,
                         double a2_, double pa_, double pb_, double qc_, double qp_, double wc_, double x_,
                         double R_) {
  using std::log;
  const T ps = ps_, pu = pu_, psu = psu_, p = p_, n1 = n1_, n2 = n2_, a1 = a1_, a2 = a2_, pa = pa_, pb = pb_,
          qc = qc_, qp = qp_, wc = wc_, x = x_, R = R_;
  const T tpe = 2 * boost::math::constants::pi<T>() * boost::math::constants::e<T>();
  const T pn = n1 + n2;
  const T k = ps * pu - psu * psu;
  InnerValues v;
  v.D_s = static_cast<double>(ps - a1 * a1 * ps * ps / (a1 * a1 * ps + pa));
  v.D_u = static_cast<double>(pu - a2 * a2 * pu * pu / (a2 * a2 * pu + pb));
  const T lhs1 = 1 + a1 * a1 * ps / pa;
  const T rhs1 = 1 + (qc + qp) / (wc + x + n1);
  const T lhs2 = 1 + a2 * a2 * k / (ps * pb);
  const T rhs2 = (1 + wc / (x + qp + n1)) * (1 + x / n1);
  v.slack_semantic = static_cast<double>((R * log(rhs1) - log(lhs1)) / 2);
  v.slack_observed = static_cast<double>((R * log(rhs2) - log(lhs2)) / 2);
  const T cs = log(pn * (p - qc) / ((wc + x + n1) * (p - qc + pn))) / 2;
  const T cu = log(pn * (x + n1) * (qp + wc + x + n1) / (n1 * (wc + x + n1) * (qp + x + pn))) / 2;
  v.channel_s = static_cast<double>(cs);
  v.channel_u = static_cast<double>(cu);
  const T da = a1 * a1 * ps + pa;
  const T db = a2 * a2 * k + ps * pb;
  v.delta_s = static_cast<double>(log(tpe * ps * pa / da) / 2 + R * cs);
  v.delta_u = static_cast<double>(log(tpe * ps * pu * pa * pb / (da * db)) / 2 + R * cu);
  v.delta_su = static_cast<double>(log(tpe * tpe * k * ps * pa * pb / (da * db)) / 2 + R * cu);
  return v;
}

}  // namespace oracle

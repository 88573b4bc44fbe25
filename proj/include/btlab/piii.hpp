#pragma once

// Numerical verification of the finite-n integrable structure: the
// recurrence ratio alpha_n(x) = -pi_{n+1}(0)/pi_n(0) (x = t/2) against the
// Painleve III equation, and sigma built from log D_{n,nu} against the
// sigma-form ODE. All derivatives are analytic propagations, never finite
// differences.

#include "btlab/orthopoly.hpp"

namespace btlab {

template <class S>
struct AlphaDerivs {
  S alpha{0.0};
  S dalpha{0.0};   // d/dx, x = t/2
  S ddalpha{0.0};  // d2/dx2
};

template <class S>
AlphaDerivs<S> alpha_and_derivs(double nu, int n, double x) {
  double t = 2.0 * x;
  auto tab = build_moment_table<S>(nu, t, n + 1);
  auto sn = op_snapshot(tab, n, true);
  auto sn1 = op_snapshot(tab, n + 1, true);
  const S &p = sn1.pi0(), &pt = sn1.pi0_t(), &ptt = sn1.pi0_tt();
  const S &q = sn.pi0(), &qt = sn.pi0_t(), &qtt = sn.pi0_tt();
  S q2 = q * q;
  AlphaDerivs<S> r;
  r.alpha = -p / q;
  S at = -pt / q + p * qt / q2;
  S att = -ptt / q + S(2.0) * pt * qt / q2 + p * qtt / q2 - S(2.0) * p * qt * qt / (q2 * q);
  r.dalpha = S(2.0) * at;    // chain rule t = 2x
  r.ddalpha = S(4.0) * att;
  return r;
}

template <class S>
struct ResidualReport {
  S residual{0.0};
  S scale{0.0};  // magnitude of the largest composed term
};

// alpha'' - [alpha'^2/alpha - alpha'/x + (4/x)((nu-n)alpha^2 + n+nu+1)
//            + 4 alpha^3 - 4/alpha]
template <class S>
ResidualReport<S> piii_residual(double nu, int n, double x) {
  auto a = alpha_and_derivs<S>(nu, n, x);
  if (a.alpha.is_zero()) throw DomainError("piii_residual: alpha vanishes at this x");
  S xs(x);
  S t1 = a.dalpha * a.dalpha / a.alpha;
  S t2 = a.dalpha / xs;
  // coefficients formed in S: nu - n and n + nu + 1 round in double
  S th0 = S(nu) - S(static_cast<double>(n));
  S cplus = S(static_cast<double>(n)) + S(nu) + S(1.0);
  S t3 = S(4.0) / xs * (th0 * a.alpha * a.alpha + cplus);
  S t4 = S(4.0) * a.alpha * a.alpha * a.alpha;
  S t5 = S(4.0) / a.alpha;
  ResidualReport<S> r;
  r.residual = a.ddalpha - (t1 - t2 + t3 + t4 - t5);
  r.scale = abs(a.ddalpha);
  for (const S& v : {t1, t2, t3, t4, t5})
    if (abs(v) > r.scale) r.scale = abs(v);
  return r;
}

template <class S>
struct SigmaDerivs {
  S sigma{0.0};
  S dsigma{0.0};
  S ddsigma{0.0};
};

// sigma(x) = x d/dx log tau(x) with D_{n,nu}(t) = c e^{t^2/8} tau(t/2);
// the constant c drops out of every derivative.
template <class S>
SigmaDerivs<S> sigma_and_derivs(double nu, int n, double x) {
  double t = 2.0 * x;
  std::array<S, 3> L{S(0.0), S(0.0), S(0.0)};
  if (n > 0) {
    auto tab = build_moment_table<S>(nu, t, n);
    L = dlogdet(tab, n, 3);
  }
  S xs(x);
  SigmaDerivs<S> s;
  s.sigma = S(2.0) * xs * L[0] - xs * xs;
  s.dsigma = S(2.0) * L[0] + S(4.0) * xs * L[1] - S(2.0) * xs;
  s.ddsigma = S(8.0) * L[1] + S(8.0) * xs * L[2] - S(2.0);
  return s;
}

// (x s'' - s')^2 = 4(2s - x s')(s'^2 - 4x^2) + 2(th0^2+thi^2)(s'^2 + 4x^2)
//                  - 16 th0 thi x s',  th0 = nu - n, thi = -(n + nu).
template <class S>
ResidualReport<S> sigma_form_residual_from(const SigmaDerivs<S>& s, double nu, int n, double x) {
  // theta parameters formed in S: the double sums nu -+ n round
  S xs(x);
  S th0 = S(nu) - S(static_cast<double>(n));
  S thi = -(S(static_cast<double>(n)) + S(nu));
  S lhs = (xs * s.ddsigma - s.dsigma) * (xs * s.ddsigma - s.dsigma);
  S r1 = S(4.0) * (S(2.0) * s.sigma - xs * s.dsigma) * (s.dsigma * s.dsigma - S(4.0) * xs * xs);
  S r2 = S(2.0) * (th0 * th0 + thi * thi) * (s.dsigma * s.dsigma + S(4.0) * xs * xs);
  S r3 = S(16.0) * th0 * thi * xs * s.dsigma;
  ResidualReport<S> r;
  r.residual = lhs - (r1 + r2 - r3);
  r.scale = abs(lhs);
  for (const S& v : {r1, r2, r3})
    if (abs(v) > r.scale) r.scale = abs(v);
  return r;
}

template <class S>
ResidualReport<S> sigma_form_residual(double nu, int n, double x) {
  return sigma_form_residual_from(sigma_and_derivs<S>(nu, n, x), nu, n, x);
}

}  // namespace btlab

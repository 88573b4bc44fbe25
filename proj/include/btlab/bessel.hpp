#pragma once

// Modified Bessel functions I_mu(t) for real order and t > 0.
//
// Primary route: ascending series for mu >= 0 (all terms positive), and the
// connection formula I_{-a} = I_a + (2/pi) sin(a pi) K_a for negative
// non-integer orders, with K_a from a fixed-sign tanh-sinh integral. Every
// sub-computation is cancellation free. An independent oscillatory-integral
// oracle lives in bessel_i_oracle (double-double only).

#include "btlab/scalar.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace btlab {

struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// I_a(t) = sum_k (t/2)^{a+2k} / (k! Gamma(a+k+1)), a >= 0, t > 0.
template <class S>
S bessel_i_series(const S& a, const S& t) {
  if (!(a >= S(0.0))) throw DomainError("bessel_i_series: order must be >= 0");
  if (!(t > S(0.0))) throw DomainError("bessel_i_series: t must be > 0");
  S half_t = t / S(2.0);
  S lead = a * log(half_t) - lgamma_pos(a + S(1.0));
  S q = half_t * half_t;
  S term(1.0), sum(1.0);
  double tol = std::pow(10.0, -(ScalarOps<S>::digits() + 3));
  for (int k = 1; k < 100000; ++k) {
    term = term * q / (S(static_cast<double>(k)) * (a + S(static_cast<double>(k))));
    sum += term;
    if (to_double(term) < tol * to_double(sum)) break;
  }
  return exp(lead) * sum;
}

namespace detail {

// log(cosh(c)) without overflow: |c| + log((1 + e^{-2|c|})/2).
template <class S>
S log_cosh(const S& c) {
  S a = abs(c);
  if (to_double(a) > 40.0 * (ScalarOps<S>::digits() + 4)) return a;  // e^{-2a} negligible
  return a + log((S(1.0) + exp(S(-2.0) * a)) / S(2.0));
}

}  // namespace detail

// K_a(t) = int_0^inf e^{-t cosh u} cosh(a u) du, tanh-sinh on the truncated
// interval [0, U]; the integrand is positive, so the sum is cancellation free.
template <class S>
S bessel_k_integral(const S& a, const S& t) {
  if (!(t > S(0.0))) throw DomainError("bessel_k_integral: t must be > 0");
  int digits = ScalarOps<S>::digits();
  double td = to_double(t);
  double aa = std::fabs(to_double(a));
  // log-magnitude profile phi(u) = -t cosh u + aa u bounds the integrand
  auto phi = [&](double u) { return -td * std::cosh(u) + aa * u; };
  double u0 = std::asinh(aa / td);
  double peak = phi(u0);
  double drop = (digits + 10) * 2.302585092994046;
  double hi = u0 + 1.0;
  while (phi(hi) > peak - drop) hi += 1.0;
  double lo = u0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (phi(mid) > peak - drop ? lo : hi) = mid;
  }
  double trunc_u = hi;
  double smax = std::asinh((digits + 12) * 2.302585092994046 / 3.141592653589793);
  double skip_log = peak - (digits + 14) * 2.302585092994046;

  S U(trunc_u);
  S half_U = U / S(2.0);
  S half_pi = ScalarOps<S>::pi() / S(2.0);
  S aS = abs(a);

  auto node_value = [&](const S& s) -> S {
    S sh = sinh(s);
    S v = half_pi * sh;
    S x = half_U * (S(1.0) + tanh(v));
    S cv = cosh(v);
    S w = half_U * half_pi * cosh(s) / (cv * cv);
    double xd = to_double(x);
    if (-td * std::cosh(xd) + aa * xd < skip_log) return S(0.0);
    S f = exp(-t * cosh(x) + detail::log_cosh(aS * x));
    return w * f;
  };

  double tol = std::pow(10.0, -(digits - 2));
  double h = 0.5;
  S acc = node_value(S(0.0));
  {
    long kmax = static_cast<long>(smax / h) + 1;
    for (long k = 1; k <= kmax; ++k) {
      S s(h * static_cast<double>(k));
      acc += node_value(s) + node_value(-s);
    }
  }
  S integral = acc * S(h);
  for (int level = 1; level <= 14; ++level) {
    h *= 0.5;
    long kmax = static_cast<long>(smax / h) + 1;
    S sum_new(0.0);
    for (long k = 1; k <= kmax; k += 2) {
      S s(h * static_cast<double>(k));
      sum_new += node_value(s) + node_value(-s);
    }
    S refined = integral / S(2.0) + sum_new * S(h);
    double change = std::fabs(to_double(refined - integral));
    integral = refined;
    if (change <= tol * std::fabs(to_double(integral))) return integral;
  }
  throw QuadratureError("bessel_k_integral: tanh-sinh did not converge");
}

// I_mu(t) for arbitrary real mu. Negative non-integer orders go through the
// connection formula; integer orders use I_{-n} = I_n.
template <class S>
S bessel_i(const S& mu, const S& t) {
  double mud = to_double(mu);
  if (mud >= 0.0) return bessel_i_series(mu, t);
  S a = -mu;
  double ad = -mud;
  if (std::fabs(ad - std::round(ad)) < 1e-12) return bessel_i_series(S(std::round(ad)), t);
  S k = bessel_k_integral(a, t);
  return bessel_i_series(a, t) + S(2.0) / ScalarOps<S>::pi() * sin_pi(a) * k;
}

inline DdReal ldexp_scalar(const DdReal& a, int k) { return ldexp(a, k); }
inline MpReal ldexp_scalar(const MpReal& a, int k) {
  MpReal r(a);
  mpfr_mul_2si(r.raw(), r.raw(), k, MPFR_RNDN);
  return r;
}

// [I, I', I'', I'''](t) via I'_mu = (I_{mu-1} + I_{mu+1})/2 applied
// repeatedly: I^{(d)} = 2^{-d} sum_j C(d,j) I_{mu-d+2j}.
template <class S>
std::vector<S> bessel_i_derivs(const S& mu, const S& t, int order) {
  if (order < 0 || order > 3) throw DomainError("bessel_i_derivs: order must be in 0..3");
  std::vector<S> cache;
  for (int m = -order; m <= order; ++m) cache.push_back(bessel_i(mu + S(static_cast<double>(m)), t));
  auto at = [&](int m) -> const S& { return cache[static_cast<size_t>(m + order)]; };
  static const double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  std::vector<S> out;
  for (int d = 0; d <= order; ++d) {
    S s(0.0);
    for (int j = 0; j <= d; ++j) s += S(binom[d][j]) * at(-d + 2 * j);
    out.push_back(ldexp_scalar(s, -d));
  }
  return out;
}

// Independent validation path: Schlaefli-type representation
//   I_mu(t) = (1/pi) int_0^pi e^{t cos th} cos(mu th) dth
//           - (sin(mu pi)/pi) int_0^inf e^{-t cosh u - mu u} du,
// adaptive Gauss-Legendre panels. The first integral cancels like e^t/I_mu;
// the result reports how many digits survive.
struct IOracleResult {
  DdReal value;
  int certified_digits;
};
IOracleResult bessel_i_oracle(double mu, double t);

// Gauss-Legendre nodes/weights on [-1,1] in double-double (used by the oracle
// and by quadrature-style tests).
void gauss_legendre(int n, std::vector<DdReal>& nodes, std::vector<DdReal>& weights);

}  // namespace btlab

#pragma once

// Bi-orthogonal polynomial scalars from Toeplitz linear solves: pi_n(0),
// h_n, gamma_n, the sub-leading coefficients a_{n,n-1} and its tilde
// companion, and their analytic t-derivatives via differentiated systems.

#include "btlab/toeplitz.hpp"

namespace btlab {

template <class S>
struct OpSnapshot {
  int n = 0;
  double nu = 0.0;
  double t = 0.0;
  std::vector<S> c;    // monic coefficients of pi_n, c[n] = 1
  std::vector<S> ct;   // monic coefficients of pi~_n, ct[n] = 1
  std::vector<S> c1;   // d/dt of c (last entry 0)
  std::vector<S> c2;   // d2/dt2 of c
  std::vector<S> ct1;  // d/dt of ct
  S h{0.0};            // h_n = D_{n+1}/D_n
  int h_sign = 1;
  S gamma_abs{0.0};  // |h_n|^{-1/2}; gamma_n = gamma_abs when h_n > 0
  bool has_derivs = false;

  const S& pi0() const { return c[0]; }
  const S& pi0_t() const { return c1[0]; }
  const S& pi0_tt() const { return c2[0]; }
  const S& a_sub() const { return c[static_cast<size_t>(n - 1)]; }
  const S& a_sub_t() const { return c1[static_cast<size_t>(n - 1)]; }
  const S& at_sub() const { return ct[static_cast<size_t>(n - 1)]; }
  const S& at_sub_t() const { return ct1[static_cast<size_t>(n - 1)]; }
};

namespace detail {

// y_i = sum_j m[(j-i)*sgn][d] x_j over the length-(n) unknown block.
template <class S>
std::vector<S> apply_deriv_matrix(const MomentTable<S>& tab, int n, int d, int sgn,
                                  const std::vector<S>& x) {
  std::vector<S> y(static_cast<size_t>(n), S(0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      y[static_cast<size_t>(i)] += tab.at((j - i) * sgn, d) * x[static_cast<size_t>(j)];
  return y;
}

}  // namespace detail

// Solve the orthogonality systems at degree n; with_derivs fills the first
// two t-derivatives of c and the first of ct by differentiating M c = r.
template <class S>
OpSnapshot<S> op_snapshot(const MomentTable<S>& tab, int n, bool with_derivs = true) {
  OpSnapshot<S> s;
  s.n = n;
  s.nu = tab.nu;
  s.t = tab.t;
  if (n == 0) {
    s.c = {S(1.0)};
    s.ct = {S(1.0)};
    s.c1 = {S(0.0)};
    s.c2 = {S(0.0)};
    s.ct1 = {S(0.0)};
    s.h = tab.at(0, 0);
    s.h_sign = s.h.is_negative() ? -1 : 1;
    s.gamma_abs = S(1.0) / sqrt(abs(s.h));
    s.has_derivs = with_derivs;
    return s;
  }
  auto fac = factorize(tab, n);
  // transposed system for pi~: entries m[i-j]
  std::vector<S> mt(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mt[static_cast<size_t>(i * n + j)] = tab.at(i - j, 0);
  auto fac_t = factorize_matrix(std::move(mt), n);

  std::vector<S> r(static_cast<size_t>(n)), rt(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    r[static_cast<size_t>(i)] = -tab.at(n - i, 0);
    rt[static_cast<size_t>(i)] = -tab.at(i - n, 0);
  }
  std::vector<S> x = solve(fac, r);
  std::vector<S> xt = solve(fac_t, rt);
  s.c = x;
  s.c.push_back(S(1.0));
  s.ct = xt;
  s.ct.push_back(S(1.0));

  s.h = S(0.0);
  for (int j = 0; j <= n; ++j) s.h += s.c[static_cast<size_t>(j)] * tab.at(j - n, 0);
  s.h_sign = s.h.is_negative() ? -1 : 1;
  s.gamma_abs = S(1.0) / sqrt(abs(s.h));

  if (with_derivs) {
    auto neg_m_col = [&](int d, int sgn) {
      std::vector<S> v(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = -tab.at((n - i) * sgn, d);
      return v;
    };
    // M c' = r' - M' c
    std::vector<S> b = neg_m_col(1, 1);
    std::vector<S> m1x = detail::apply_deriv_matrix(tab, n, 1, 1, x);
    for (int i = 0; i < n; ++i) b[static_cast<size_t>(i)] -= m1x[static_cast<size_t>(i)];
    std::vector<S> x1 = solve(fac, b);
    // M c'' = r'' - 2 M' c' - M'' c
    std::vector<S> b2 = neg_m_col(2, 1);
    std::vector<S> m1x1 = detail::apply_deriv_matrix(tab, n, 1, 1, x1);
    std::vector<S> m2x = detail::apply_deriv_matrix(tab, n, 2, 1, x);
    for (int i = 0; i < n; ++i)
      b2[static_cast<size_t>(i)] -= S(2.0) * m1x1[static_cast<size_t>(i)] + m2x[static_cast<size_t>(i)];
    std::vector<S> x2 = solve(fac, b2);
    // transposed side, first derivative only
    std::vector<S> bt = neg_m_col(1, -1);
    std::vector<S> mt1x = detail::apply_deriv_matrix(tab, n, 1, -1, xt);
    for (int i = 0; i < n; ++i) bt[static_cast<size_t>(i)] -= mt1x[static_cast<size_t>(i)];
    std::vector<S> xt1 = solve(fac_t, bt);
    s.c1 = x1;
    s.c1.push_back(S(0.0));
    s.c2 = x2;
    s.c2.push_back(S(0.0));
    s.ct1 = xt1;
    s.ct1.push_back(S(0.0));
    s.has_derivs = true;
  }
  return s;
}

// d/dt log D_{n,nu} = -(a_{n,n-1} + a~_{n,n-1})/2.
template <class S>
S dlogD_via_identity(const OpSnapshot<S>& s) {
  if (s.n == 0) return S(0.0);
  return -(s.a_sub() + s.at_sub()) / S(2.0);
}

// pi_n(0) from the bordered-determinant expression: (-1)^n det(A)/D_n with
// A_{ij} = m_{(j+1)-i}. Cross-validation route for the linear-solve value.
template <class S>
S pi0_bordered(const MomentTable<S>& tab, int n) {
  if (n == 0) return S(1.0);
  auto fd = factorize(tab, n);
  std::vector<S> a(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i * n + j)] = tab.at(j + 1 - i, 0);
  auto fa = factorize_matrix(std::move(a), n);
  int sign = fa.sign * fd.sign * (n % 2 == 0 ? 1 : -1);
  S mag = exp(fa.logdet_abs - fd.logdet_abs);
  return sign < 0 ? -mag : mag;
}

}  // namespace btlab

#pragma once

// Moment matrix (m_{j-i})_{i,j=0}^{n-1} with m_k = I_{-k-nu}(t): table of
// moments with analytic t-derivatives to order 3, pivoted LU with
// log-magnitude determinant tracking, linear solves, and the Jacobi-formula
// derivatives of log det to third order.

#include "btlab/bessel.hpp"

#include <array>
#include <vector>

namespace btlab {

struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

template <class S>
struct MomentTable {
  double nu = 0.0;
  double t = 0.0;
  int kmin = 0;
  int kmax = 0;
  std::vector<std::array<S, 4>> m;  // m[k - kmin][d] = d-th t-derivative of m_k

  const S& at(int k, int d) const { return m[static_cast<size_t>(k - kmin)][static_cast<size_t>(d)]; }
};

// Fill m_k and derivatives for k in [-n-3, n+3], d in 0..3.
template <class S>
MomentTable<S> build_moment_table(double nu, double t, int n) {
  if (n < 1 || n > 128) throw DomainError("build_moment_table: n must be in 1..128");
  if (!(t > 0.0)) throw DomainError("build_moment_table: t must be > 0");
  MomentTable<S> tab;
  tab.nu = nu;
  tab.t = t;
  tab.kmin = -n - 3;
  tab.kmax = n + 3;
  S tS(t), nuS(nu);
  // I_{-j-nu}(t) for j in [kmin-3, kmax+3]; derivative combos reach 3 beyond
  std::vector<S> cache;
  for (int j = tab.kmin - 3; j <= tab.kmax + 3; ++j)
    cache.push_back(bessel_i(S(static_cast<double>(-j)) - nuS, tS));
  auto ival = [&](int j) -> const S& { return cache[static_cast<size_t>(j - (tab.kmin - 3))]; };
  static const double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  tab.m.resize(static_cast<size_t>(tab.kmax - tab.kmin + 1));
  for (int k = tab.kmin; k <= tab.kmax; ++k) {
    for (int d = 0; d <= 3; ++d) {
      S s(0.0);
      for (int j = 0; j <= d; ++j) s += S(binom[d][j]) * ival(k + d - 2 * j);
      tab.m[static_cast<size_t>(k - tab.kmin)][static_cast<size_t>(d)] = ldexp_scalar(s, -d);
    }
  }
  return tab;
}

// Dense matrix whose (i,j) entry is m[j-i][d].
template <class S>
std::vector<S> moment_matrix(const MomentTable<S>& tab, int n, int d) {
  std::vector<S> a(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i * n + j)] = tab.at(j - i, d);
  return a;
}

template <class S>
struct ToeplitzFactorization {
  int n = 0;
  std::vector<int> pivot;   // row chosen at each elimination step
  std::vector<S> lu;        // packed factors, unit-diagonal L
  std::vector<S> original;  // for iterative refinement
  S logdet_abs{0.0};
  int sign = 1;
  double growth = 1.0;  // max intermediate entry / max initial entry
};

template <class S>
ToeplitzFactorization<S> factorize_matrix(std::vector<S> a, int n) {
  ToeplitzFactorization<S> f;
  f.n = n;
  f.original = a;
  f.pivot.resize(static_cast<size_t>(n));
  double max0 = 0.0;
  for (const S& v : a) max0 = std::max(max0, std::fabs(to_double(v)));
  double maxi = max0;
  auto idx = [n](int i, int j) { return static_cast<size_t>(i * n + j); };
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (abs(a[idx(i, k)]) > abs(a[idx(piv, k)])) piv = i;
    f.pivot[static_cast<size_t>(k)] = piv;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a[idx(k, j)], a[idx(piv, j)]);
      f.sign = -f.sign;
    }
    const S& d = a[idx(k, k)];
    if (d.is_zero())
      throw SingularMatrixError("factorize: zero pivot at step " + std::to_string(k) +
                                " (zero of the determinant)");
    if (d.is_negative()) f.sign = -f.sign;
    f.logdet_abs += log(abs(d));
    for (int i = k + 1; i < n; ++i) {
      S l = a[idx(i, k)] / d;
      a[idx(i, k)] = l;
      for (int j = k + 1; j < n; ++j) {
        a[idx(i, j)] -= l * a[idx(k, j)];
        maxi = std::max(maxi, std::fabs(to_double(a[idx(i, j)])));
      }
    }
  }
  f.lu = std::move(a);
  f.growth = max0 > 0.0 ? maxi / max0 : 1.0;
  return f;
}

template <class S>
ToeplitzFactorization<S> factorize(const MomentTable<S>& tab, int n) {
  return factorize_matrix(moment_matrix(tab, n, 0), n);
}

namespace detail {

template <class S>
std::vector<S> lu_substitute(const ToeplitzFactorization<S>& f, std::vector<S> b) {
  int n = f.n;
  auto idx = [n](int i, int j) { return static_cast<size_t>(i * n + j); };
  // apply the full permutation before eliminating: later swaps would
  // otherwise move already-updated entries back above the current row
  for (int k = 0; k < n; ++k)
    std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(f.pivot[static_cast<size_t>(k)])]);
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i) b[static_cast<size_t>(i)] -= f.lu[idx(i, k)] * b[static_cast<size_t>(k)];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[static_cast<size_t>(i)] -= f.lu[idx(i, j)] * b[static_cast<size_t>(j)];
    b[static_cast<size_t>(i)] /= f.lu[idx(i, i)];
  }
  return b;
}

}  // namespace detail

// Solve M x = rhs with one step of iterative refinement in working precision.
template <class S>
std::vector<S> solve(const ToeplitzFactorization<S>& f, const std::vector<S>& rhs) {
  int n = f.n;
  std::vector<S> x = detail::lu_substitute(f, rhs);
  std::vector<S> r = rhs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r[static_cast<size_t>(i)] -= f.original[static_cast<size_t>(i * n + j)] * x[static_cast<size_t>(j)];
  std::vector<S> dx = detail::lu_substitute(f, r);
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] += dx[static_cast<size_t>(i)];
  return x;
}

// d^k/dt^k log det M for k = 1..order, by Jacobi's formula:
//   L'   = tr(X1)
//   L''  = tr(X2) - tr(X1^2)
//   L''' = tr(X3) - 3 tr(X2 X1) + 2 tr(X1^3),   X_d = M^{-1} M^{(d)}.
template <class S>
std::array<S, 3> dlogdet(const MomentTable<S>& tab, int n, int order) {
  if (order < 1 || order > 3) throw DomainError("dlogdet: order must be in 1..3");
  std::array<S, 3> out{S(0.0), S(0.0), S(0.0)};
  if (n == 0) return out;  // D_0 = 1 by convention
  auto f = factorize(tab, n);
  auto idx = [n](int i, int j) { return static_cast<size_t>(i * n + j); };
  // X_d columns via solves against columns of M^{(d)}
  std::vector<std::vector<S>> X(static_cast<size_t>(order));
  for (int d = 1; d <= order; ++d) {
    std::vector<S> xd(static_cast<size_t>(n) * static_cast<size_t>(n));
    std::vector<S> col(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] = tab.at(j - i, d);
      auto sol = solve(f, col);
      for (int i = 0; i < n; ++i) xd[idx(i, j)] = sol[static_cast<size_t>(i)];
    }
    X[static_cast<size_t>(d - 1)] = std::move(xd);
  }
  auto trace = [&](const std::vector<S>& a) {
    S s(0.0);
    for (int i = 0; i < n; ++i) s += a[idx(i, i)];
    return s;
  };
  auto trace_prod = [&](const std::vector<S>& a, const std::vector<S>& b) {
    S s(0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += a[idx(i, j)] * b[idx(j, i)];
    return s;
  };
  out[0] = trace(X[0]);
  if (order >= 2) out[1] = trace(X[1]) - trace_prod(X[0], X[0]);
  if (order >= 3) {
    std::vector<S> x1sq(static_cast<size_t>(n) * static_cast<size_t>(n), S(0.0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const S& aik = X[0][idx(i, k)];
        for (int j = 0; j < n; ++j) x1sq[idx(i, j)] += aik * X[0][idx(k, j)];
      }
    out[2] = trace(X[2]) - S(3.0) * trace_prod(X[1], X[0]) + S(2.0) * trace_prod(x1sq, X[0]);
  }
  return out;
}

}  // namespace btlab

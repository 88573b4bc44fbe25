#include "btlab/bessel.hpp"

#include <algorithm>
#include <cmath>

namespace btlab {

void gauss_legendre(int n, std::vector<DdReal>& nodes, std::vector<DdReal>& weights) {
  nodes.assign(static_cast<size_t>(n), DdReal(0.0));
  weights.assign(static_cast<size_t>(n), DdReal(0.0));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    DdReal x(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
    DdReal dp(0.0);
    for (int it = 0; it < 5; ++it) {
      DdReal p0(1.0), p1 = x;
      for (int j = 2; j <= n; ++j) {
        DdReal p = (DdReal(2.0 * j - 1.0) * x * p1 - DdReal(j - 1.0) * p0) / DdReal(static_cast<double>(j));
        p0 = p1;
        p1 = p;
      }
      dp = DdReal(static_cast<double>(n)) * (x * p1 - p0) / (x * x - DdReal(1.0));
      x -= p1 / dp;
    }
    DdReal w = DdReal(2.0) / ((DdReal(1.0) - x * x) * dp * dp);
    nodes[static_cast<size_t>(i)] = -x;
    nodes[static_cast<size_t>(n - 1 - i)] = x;
    weights[static_cast<size_t>(i)] = w;
    weights[static_cast<size_t>(n - 1 - i)] = w;
  }
}

namespace {

// Integrate f over [a,b] split into `panels` Gauss-Legendre 24-point panels.
template <class F>
DdReal gl_panels(const F& f, const DdReal& a, const DdReal& b, int panels) {
  static std::vector<DdReal> xs, ws;
  if (xs.empty()) gauss_legendre(24, xs, ws);
  DdReal h = (b - a) / DdReal(static_cast<double>(panels));
  DdReal half_h = ldexp(h, -1);
  DdReal total(0.0);
  for (int p = 0; p < panels; ++p) {
    DdReal mid = a + h * DdReal(p + 0.5);
    DdReal acc(0.0);
    for (size_t i = 0; i < xs.size(); ++i) acc += ws[i] * f(mid + half_h * xs[i]);
    total += acc * half_h;
  }
  return total;
}

template <class F>
DdReal gl_adaptive(const F& f, const DdReal& a, const DdReal& b, int panels0, double abs_tol) {
  DdReal prev = gl_panels(f, a, b, panels0);
  int panels = panels0;
  for (int it = 0; it < 7; ++it) {
    panels *= 2;
    DdReal cur = gl_panels(f, a, b, panels);
    double change = std::fabs(to_double(cur - prev));
    prev = cur;
    if (change <= abs_tol) break;
  }
  return prev;
}

}  // namespace

IOracleResult bessel_i_oracle(double mu, double t) {
  if (!(t > 0.0)) throw DomainError("bessel_i_oracle: t must be > 0");
  DdReal tS(t), muS(mu);
  DdReal pi = dd_pi();
  double scale = std::exp(t) / M_PI;

  auto f_osc = [&](const DdReal& th) { return exp(tS * cos(th)) * cos(muS * th); };
  int panels0 = std::max(8, static_cast<int>(std::ceil(std::fabs(mu) / 2.0)) + 4);
  DdReal A = gl_adaptive(f_osc, DdReal(0.0), pi, panels0, 1e-31 * scale) / pi;

  DdReal result = A;
  double tail_peak = 0.0;
  bool integer_order = std::fabs(mu - std::round(mu)) < 1e-12;
  if (!integer_order) {
    auto phi = [&](double u) { return -t * std::cosh(u) - mu * u; };
    double u0 = mu >= 0.0 ? 0.0 : std::asinh(-mu / t);
    tail_peak = phi(u0);
    double hi = u0 + 1.0;
    while (phi(hi) > tail_peak - 75.0 * 2.302585092994046) hi += 1.0;
    auto f_tail = [&](const DdReal& u) { return exp(-tS * cosh(u) - muS * u); };
    double tail_scale = std::exp(tail_peak) * hi;
    DdReal B = gl_adaptive(f_tail, DdReal(0.0), DdReal(hi),
                           std::max(8, static_cast<int>(std::ceil(2.0 * hi))), 1e-31 * tail_scale);
    result = A - sin_pi(muS) / pi * B;
    scale += std::fabs(to_double(sin_pi(muS))) / M_PI * tail_scale;
  }

  double lost = std::log10(scale / std::max(std::fabs(to_double(result)), 1e-300));
  int certified = 31 - static_cast<int>(std::ceil(std::max(lost, 0.0))) - 2;
  if (certified < 10)
    throw QuadratureError("bessel_i_oracle: fewer than 10 digits certified at mu=" +
                          std::to_string(mu) + ", t=" + std::to_string(t));
  return {result, certified};
}

}  // namespace btlab

#include "btlab/painleve2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace btlab {

bool is_natural(double nu) {
  return nu > -1e-12 && std::fabs(nu - std::round(nu)) < 1e-12;
}

std::pair<double, double> boundary_values(double nu, double xl, double xr, bool integer_branch) {
  double ur = -(nu + 0.5) / xr;
  double s = integer_branch ? -1.0 : 1.0;
  double ul = s * std::sqrt(-xl / 2.0) + (nu + 0.5) / (2.0 * xl);
  return {ul, ur};
}

double pii_hamiltonian(double nu, double x, double u, double du) {
  double z = du - u * u - x / 2.0;
  return 0.5 * z * (z + x) + z * u * u - nu * u;
}

namespace {

// Damped Newton on the second-order central-difference discretization with
// Dirichlet data. Returns interior+boundary values; iters/ok via out-params.
std::vector<double> newton_bvp(double nu, double xl, double xr, double ul, double ur, int N,
                               double tol, bool integer_branch, int& iters, bool& ok,
                               const std::vector<double>* init = nullptr) {
  double h = (xr - xl) / N;
  std::vector<double> x(static_cast<size_t>(N) + 1), u(static_cast<size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) x[static_cast<size_t>(i)] = xl + h * i;
  if (init) {
    u = *init;
  } else {
    double s = integer_branch ? -1.0 : 1.0;
    for (int i = 0; i <= N; ++i) {
      double xi = x[static_cast<size_t>(i)];
      double g = 1.0 / (1.0 + std::exp(xi));  // sigmoid blend centered at 0
      double uL = s * std::sqrt(std::max(-xi, 0.0) / 2.0) + (nu + 0.5) * xi / (2.0 * (xi * xi + 4.0));
      double uR = -(nu + 0.5) * xi / (xi * xi + 4.0);
      u[static_cast<size_t>(i)] = g * uL + (1.0 - g) * uR;
    }
  }
  u[0] = ul;
  u[static_cast<size_t>(N)] = ur;

  auto residual = [&](const std::vector<double>& v, std::vector<double>& F) {
    double worst = 0.0;
    for (int i = 1; i < N; ++i) {
      double xi = x[static_cast<size_t>(i)];
      double ui = v[static_cast<size_t>(i)];
      double f = (v[static_cast<size_t>(i - 1)] - 2.0 * ui + v[static_cast<size_t>(i + 1)]) / (h * h) -
                 2.0 * ui * ui * ui - xi * ui - (nu + 0.5);
      F[static_cast<size_t>(i)] = f;
      worst = std::max(worst, std::fabs(f));
    }
    return worst;
  };

  std::vector<double> F(static_cast<size_t>(N) + 1, 0.0), dl(static_cast<size_t>(N) + 1),
      dm(static_cast<size_t>(N) + 1), du_(static_cast<size_t>(N) + 1), rhs(static_cast<size_t>(N) + 1),
      step(static_cast<size_t>(N) + 1, 0.0), trial(static_cast<size_t>(N) + 1);
  double norm = residual(u, F);
  ok = false;
  // the discrete residual cannot drop below the rounding floor of the
  // 1/h^2 difference quotient, so cap the target accordingly
  double tol_eff = std::max(tol, 64.0 * 2.220446049250313e-16 / (h * h));
  for (iters = 0; iters < 200; ++iters) {
    if (norm < tol_eff) {
      ok = true;
      break;
    }
    // tridiagonal Jacobian: J_ii = -2/h^2 - 6u^2 - x, off-diagonals 1/h^2
    for (int i = 1; i < N; ++i) {
      double ui = u[static_cast<size_t>(i)];
      dm[static_cast<size_t>(i)] = -2.0 / (h * h) - 6.0 * ui * ui - x[static_cast<size_t>(i)];
      dl[static_cast<size_t>(i)] = 1.0 / (h * h);
      du_[static_cast<size_t>(i)] = 1.0 / (h * h);
      rhs[static_cast<size_t>(i)] = -F[static_cast<size_t>(i)];
    }
    // Thomas solve on 1..N-1
    for (int i = 2; i < N; ++i) {
      double w = dl[static_cast<size_t>(i)] / dm[static_cast<size_t>(i - 1)];
      dm[static_cast<size_t>(i)] -= w * du_[static_cast<size_t>(i - 1)];
      rhs[static_cast<size_t>(i)] -= w * rhs[static_cast<size_t>(i - 1)];
    }
    step[static_cast<size_t>(N - 1)] = rhs[static_cast<size_t>(N - 1)] / dm[static_cast<size_t>(N - 1)];
    for (int i = N - 2; i >= 1; --i)
      step[static_cast<size_t>(i)] = (rhs[static_cast<size_t>(i)] -
                                      du_[static_cast<size_t>(i)] * step[static_cast<size_t>(i + 1)]) /
                                     dm[static_cast<size_t>(i)];
    double lambda = 1.0;
    double best_norm = norm;
    bool accepted = false;
    for (int half = 0; half < 10; ++half) {
      trial = u;
      for (int i = 1; i < N; ++i) trial[static_cast<size_t>(i)] += lambda * step[static_cast<size_t>(i)];
      double tn = residual(trial, F);
      if (tn < best_norm) {
        u = trial;
        norm = tn;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      // take the smallest damped step anyway and recompute
      for (int i = 1; i < N; ++i) u[static_cast<size_t>(i)] += lambda * step[static_cast<size_t>(i)];
      norm = residual(u, F);
    }
    if (!std::isfinite(norm)) break;
  }
  residual(u, F);
  return u;
}

// Direct solve first; on stall, continuation in nu from the homogeneous
// anchor -1/2 (whose Newton basin is wide), reusing each converged profile.
std::vector<double> solve_grid(double nu, double xl, double xr, int N, double tol,
                               bool integer_branch, int& iters, bool& ok) {
  auto [ul, ur] = boundary_values(nu, xl, xr, integer_branch);
  iters = 0;
  int it = 0;
  std::vector<double> u = newton_bvp(nu, xl, xr, ul, ur, N, tol, integer_branch, it, ok);
  iters += it;
  if (ok) return u;
  const double anchor = -0.5;
  int steps = std::max(1, static_cast<int>(std::ceil(std::fabs(nu - anchor) / 0.2)));
  std::vector<double>* prev = nullptr;
  for (int k = 0; k <= steps; ++k) {
    double nuk = anchor + (nu - anchor) * k / steps;
    auto [ulk, urk] = boundary_values(nuk, xl, xr, integer_branch);
    u = newton_bvp(nuk, xl, xr, ulk, urk, N, tol, integer_branch, it, ok, prev);
    iters += it;
    if (!ok) return u;
    prev = &u;
  }
  return u;
}

double interp_cubic(const std::vector<double>& x, const std::vector<double>& y, double xq) {
  int n = static_cast<int>(x.size());
  double h = x[1] - x[0];
  int i = static_cast<int>(std::floor((xq - x[0]) / h));
  i = std::clamp(i, 1, n - 3);
  double out = 0.0;
  for (int a = i - 1; a <= i + 2; ++a) {
    double l = 1.0;
    for (int b = i - 1; b <= i + 2; ++b)
      if (b != a) l *= (xq - x[static_cast<size_t>(b)]) / (x[static_cast<size_t>(a)] - x[static_cast<size_t>(b)]);
    out += l * y[static_cast<size_t>(a)];
  }
  return out;
}

}  // namespace

double PiiSolution::interp_u(double xq) const { return interp_cubic(x, u, xq); }
double PiiSolution::interp_du(double xq) const { return interp_cubic(x, du, xq); }
double PiiSolution::interp_H(double xq) const { return interp_cubic(x, H, xq); }

PiiSolution solve_hastings_mcleod(const PiiProblem& prob) {
  if (!(prob.xr >= 8.0) || !(prob.xl <= -8.0))
    throw std::invalid_argument("solve_hastings_mcleod: domain must cover [-8, 8]");
  double nu = prob.nu;
  bool integer_branch = false;
  double flip = 1.0;
  int lifts = 0;
  switch (prob.branch) {
    case PiiBranch::automatic:
      if (is_natural(nu)) {
        // reflect u(x;nu) = -u(x;-nu-1) so only the generic left branch is solved
        nu = -nu - 1.0;
        flip = -1.0;
      } else if (nu > 0.0) {
        // pole-bearing branch: solve at nu - ceil(nu) in (-1, 0), lift below
        lifts = static_cast<int>(std::ceil(nu));
        nu -= lifts;
      }
      break;
    case PiiBranch::generic:
      break;
    case PiiBranch::integer_nu:
      integer_branch = true;
      break;
  }

  int N = prob.grid;
  int it1 = 0, it2 = 0;
  bool ok1 = false, ok2 = false;
  std::vector<double> coarse =
      solve_grid(nu, prob.xl, prob.xr, N, prob.tol, integer_branch, it1, ok1);
  std::vector<double> fine =
      solve_grid(nu, prob.xl, prob.xr, 2 * N, prob.tol, integer_branch, it2, ok2);

  PiiSolution sol;
  sol.newton_iters = it1 + it2;
  double h = (prob.xr - prob.xl) / N;
  sol.x.resize(static_cast<size_t>(N) + 1);
  sol.u.resize(static_cast<size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) {
    sol.x[static_cast<size_t>(i)] = prob.xl + h * i;
    // Richardson extrapolation of the 2nd-order scheme
    sol.u[static_cast<size_t>(i)] =
        flip * (4.0 * fine[static_cast<size_t>(2 * i)] - coarse[static_cast<size_t>(i)]) / 3.0;
  }

  // 4th-order first derivative (one-sided at the edges)
  sol.du.resize(static_cast<size_t>(N) + 1);
  auto uu = [&](int i) { return sol.u[static_cast<size_t>(i)]; };
  for (int i = 2; i <= N - 2; ++i)
    sol.du[static_cast<size_t>(i)] = (uu(i - 2) - 8.0 * uu(i - 1) + 8.0 * uu(i + 1) - uu(i + 2)) / (12.0 * h);
  for (int i : {0, 1}) {
    sol.du[static_cast<size_t>(i)] = (-25.0 * uu(i) + 48.0 * uu(i + 1) - 36.0 * uu(i + 2) +
                                      16.0 * uu(i + 3) - 3.0 * uu(i + 4)) /
                                     (12.0 * h);
  }
  for (int i : {N - 1, N}) {
    sol.du[static_cast<size_t>(i)] = (25.0 * uu(i) - 48.0 * uu(i - 1) + 36.0 * uu(i - 2) -
                                      16.0 * uu(i - 3) + 3.0 * uu(i - 4)) /
                                     (12.0 * h);
  }

  // Backlund lifting toward the caller's nu (analytic pointwise map)
  for (int s = 0; s < lifts; ++s) {
    double a = nu + 0.5 + s;  // parameter of the profile being lifted
    for (int i = 0; i <= N; ++i) {
      double xi = sol.x[static_cast<size_t>(i)];
      double u = sol.u[static_cast<size_t>(i)], v = sol.du[static_cast<size_t>(i)];
      double upp = 2.0 * u * u * u + xi * u + a;
      double den = 2.0 * (u * u + v) + xi;
      double denp = 2.0 * (2.0 * u * v + upp) + 1.0;
      sol.u[static_cast<size_t>(i)] = -u - (2.0 * a + 1.0) / den;
      sol.du[static_cast<size_t>(i)] = -v + (2.0 * a + 1.0) * denp / (den * den);
    }
  }

  // real poles show up as local maxima of |u| well above the smooth scale
  sol.converged = ok1 && ok2;
  for (int i = 1; i < N; ++i) {
    double ai = std::fabs(sol.u[static_cast<size_t>(i)]);
    if (ai > 50.0 && ai >= std::fabs(sol.u[static_cast<size_t>(i - 1)]) &&
        ai >= std::fabs(sol.u[static_cast<size_t>(i + 1)]))
      sol.poles.push_back(sol.x[static_cast<size_t>(i)]);
  }
  if (!sol.poles.empty()) {
    sol.pole_x = sol.poles[0];
    for (double xp : sol.poles)
      if (std::fabs(xp) < std::fabs(sol.pole_x)) sol.pole_x = xp;
  }
  if (!sol.converged || !sol.poles.empty()) sol.pole_flag = true;

  sol.H.resize(static_cast<size_t>(N) + 1);
  double nu_out = prob.nu;
  for (int i = 0; i <= N; ++i)
    sol.H[static_cast<size_t>(i)] =
        pii_hamiltonian(nu_out, sol.x[static_cast<size_t>(i)], sol.u[static_cast<size_t>(i)],
                        sol.du[static_cast<size_t>(i)]);

  // 4th-order discrete ODE residual of the extrapolated profile; stencils
  // touching a pole neighbourhood are excluded (the values there are genuine
  // but not resolvable on a uniform grid)
  double worst = 0.0;
  double nu_eff = nu_out;
  std::vector<double> pole_sites;
  for (int i = 0; i <= N; ++i)
    if (std::fabs(uu(i)) > 10.0) pole_sites.push_back(sol.x[static_cast<size_t>(i)]);
  for (int i = 2; i <= N - 2; ++i) {
    double xi_probe = sol.x[static_cast<size_t>(i)];
    bool near_pole = false;
    for (double xp : pole_sites)
      if (std::fabs(xi_probe - xp) < 1.0) near_pole = true;
    if (near_pole) continue;
    double xi = sol.x[static_cast<size_t>(i)];
    double ui = uu(i);
    double d2 = (-uu(i - 2) + 16.0 * uu(i - 1) - 30.0 * ui + 16.0 * uu(i + 1) - uu(i + 2)) /
                (12.0 * h * h);
    worst = std::max(worst, std::fabs(d2 - 2.0 * ui * ui * ui - xi * ui - (nu_eff + 0.5)));
  }
  sol.final_residual = worst;
  return sol;
}

double shooting_u0_homogeneous() {
  const double xr = 12.0, xl = -8.0;
  const double h = -2.5e-4;
  const long steps = static_cast<long>(std::llround((xl - xr) / h));
  const long step_at_zero = static_cast<long>(std::llround((0.0 - xr) / h));
  // far-field logarithmic derivative of the decaying solution
  const double ratio = -std::sqrt(xr) - 1.0 / (4.0 * xr) + (5.0 / 32.0) * std::pow(xr, -2.5);

  auto classify = [&](double k, double* u_at_zero) -> int {
    double u = k, v = k * ratio, x = xr;
    for (long i = 0; i < steps; ++i) {
      auto f = [](double xx, double uu) { return 2.0 * uu * uu * uu + xx * uu; };
      double k1u = v, k1v = f(x, u);
      double k2u = v + 0.5 * h * k1v, k2v = f(x + 0.5 * h, u + 0.5 * h * k1u);
      double k3u = v + 0.5 * h * k2v, k3v = f(x + 0.5 * h, u + 0.5 * h * k2u);
      double k4u = v + h * k3v, k4v = f(x + h, u + h * k3u);
      u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      x += h;
      if (i + 1 == step_at_zero && u_at_zero) *u_at_zero = u;
      if (u > 8.0) return +1;
      if (u < -0.2) return -1;
    }
    return u > std::sqrt(-xl / 2.0) ? +1 : -1;
  };

  double lo = std::log(1e-16), hi = std::log(1e-10);
  if (classify(std::exp(lo), nullptr) != -1 || classify(std::exp(hi), nullptr) != +1)
    throw std::runtime_error("shooting_u0_homogeneous: bracketing failed");
  for (int i = 0; i < 120; ++i) {
    double mid = 0.5 * (lo + hi);
    (classify(std::exp(mid), nullptr) == -1 ? lo : hi) = mid;
  }
  double u0 = 0.0;
  classify(std::exp(0.5 * (lo + hi)), &u0);
  return u0;
}

}  // namespace btlab
